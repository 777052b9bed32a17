#pragma once

/// \file series.hpp
/// \brief Truncated multivariate Laurent series with exact rational
///        coefficients and an explicit completeness box.

#include "quiveriq/rational.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace quiveriq {

/// Exponent vector of a monomial in the Kaehler variables q_1..q_{D-1}.
/// Negative entries are permitted (Laurent exponents on the mutated side).
using MultiIndex = std::vector<long>;

/// Sentinel for an unbounded box edge (the series is complete at every
/// exponent in that direction).
inline constexpr long kUnbounded = std::numeric_limits<long>::max() / 4;

/// Per-variable completeness interval [lo, hi]. The series contract is:
/// no support below lo, and coefficients are complete (absent == exactly 0)
/// for exponents <= hi.
struct VarBound {
    long lo = 0;
    long hi = kUnbounded;
    friend bool operator==(const VarBound&, const VarBound&) = default;
};

using Box = std::vector<VarBound>;

/// Truncated multivariate Laurent series. Every stored index lies inside
/// `box`; absent indices inside the box mean coefficient exactly 0.
/// Arithmetic shrinks the box to the region where the result is provably
/// complete, so a coefficient read inside the box is always trustworthy.
class LaurentSeries {
public:
    LaurentSeries() = default;
    explicit LaurentSeries(Box box) : box_(std::move(box)) {}

    std::size_t nvars() const { return box_.size(); }
    const Box& box() const { return box_; }
    const std::map<MultiIndex, Rat>& coeffs() const { return coeffs_; }

    bool in_box(const MultiIndex& idx) const {
        for (std::size_t v = 0; v < box_.size(); ++v)
            if (idx[v] < box_[v].lo || idx[v] > box_[v].hi) return false;
        return true;
    }

    Rat coeff(const MultiIndex& idx) const {
        auto it = coeffs_.find(idx);
        return it == coeffs_.end() ? Rat(0) : it->second;
    }

    /// Accumulates into a coefficient; indices outside the box are dropped
    /// (they are incomplete by definition and must not be reported).
    void add_to(const MultiIndex& idx, const Rat& v) {
        if (v == 0 || !in_box(idx)) return;
        Rat& slot = coeffs_[idx];
        slot += v;
        if (slot == 0) coeffs_.erase(idx);
    }

    void set(const MultiIndex& idx, const Rat& v) {
        if (!in_box(idx)) return;
        if (v == 0)
            coeffs_.erase(idx);
        else
            coeffs_[idx] = v;
    }

    /// Drops stored indices that fall outside a shrunken box.
    void clip_to(const Box& box) {
        box_ = box;
        for (auto it = coeffs_.begin(); it != coeffs_.end();)
            it = in_box(it->first) ? std::next(it) : coeffs_.erase(it);
    }

private:
    Box box_;
    std::map<MultiIndex, Rat> coeffs_;
};

inline long clamped_add(long a, long b) {
    if (a >= kUnbounded || b >= kUnbounded) return kUnbounded;
    if (a <= -kUnbounded || b <= -kUnbounded) return -kUnbounded;
    return a + b;
}

/// Exact sum; the result box is the per-variable intersection of the
/// completeness regions.
inline LaurentSeries series_add(const LaurentSeries& a, const LaurentSeries& b) {
    if (a.nvars() != b.nvars())
        throw std::invalid_argument("series_add: variable count mismatch");
    Box box(a.nvars());
    for (std::size_t v = 0; v < box.size(); ++v) {
        box[v].lo = std::min(a.box()[v].lo, b.box()[v].lo);
        box[v].hi = std::min(a.box()[v].hi, b.box()[v].hi);
    }
    LaurentSeries out(box);
    for (const auto& [idx, c] : a.coeffs()) out.add_to(idx, c);
    for (const auto& [idx, c] : b.coeffs()) out.add_to(idx, c);
    return out;
}

/// Exact product. Minkowski-completeness rule: an output exponent e is
/// complete iff every decomposition e = e1 + e2 with e1 >= lo1, e2 >= lo2
/// lands inside both factor boxes, i.e. per variable
///   lo = lo1 + lo2,  hi = min(hi1 + lo2, lo1 + hi2).
inline LaurentSeries series_mul(const LaurentSeries& a, const LaurentSeries& b) {
    if (a.nvars() != b.nvars())
        throw std::invalid_argument("series_mul: variable count mismatch");
    Box box(a.nvars());
    for (std::size_t v = 0; v < box.size(); ++v) {
        box[v].lo = clamped_add(a.box()[v].lo, b.box()[v].lo);
        box[v].hi = std::min(clamped_add(a.box()[v].hi, b.box()[v].lo),
                             clamped_add(a.box()[v].lo, b.box()[v].hi));
    }
    LaurentSeries out(box);
    MultiIndex idx(a.nvars());
    for (const auto& [ia, ca] : a.coeffs())
        for (const auto& [ib, cb] : b.coeffs()) {
            for (std::size_t v = 0; v < idx.size(); ++v) idx[v] = ia[v] + ib[v];
            out.add_to(idx, ca * cb);
        }
    return out;
}

inline LaurentSeries series_scale(const LaurentSeries& a, const Rat& c) {
    LaurentSeries out(a.box());
    for (const auto& [idx, v] : a.coeffs()) out.add_to(idx, c * v);
    return out;
}

/// Constant series 1 with the given number of variables, complete everywhere
/// above the zero support.
inline LaurentSeries series_one(std::size_t nvars) {
    LaurentSeries s{Box(nvars)};
    s.set(MultiIndex(nvars, 0), Rat(1));
    return s;
}

/// exp(c * q_var) truncated at order cap: sum_{m<=cap} c^m q_var^m / m!.
inline LaurentSeries exp_series(const Rat& c, std::size_t var, std::size_t nvars, long cap) {
    if (cap < 0) throw std::invalid_argument("exp_series: cap must be >= 0");
    Box box(nvars);
    box[var].hi = cap;
    LaurentSeries s(box);
    MultiIndex idx(nvars, 0);
    Rat term(1);  // c^m / m!, updated incrementally
    for (long m = 0; m <= cap; ++m) {
        idx[var] = m;
        s.set(idx, term);
        term = term * c / (m + 1);
    }
    return s;
}

/// (1 + c * q_var)^alpha truncated at order cap; coefficient of q_var^m is
/// C(alpha, m) c^m with C the generalized binomial prod_{l=0}^{m-1}(alpha-l)/m!.
inline LaurentSeries binom_series(const Rat& alpha, const Rat& c, std::size_t var,
                                  std::size_t nvars, long cap) {
    if (cap < 0) throw std::invalid_argument("binom_series: cap must be >= 0");
    Box box(nvars);
    box[var].hi = cap;
    LaurentSeries s(box);
    MultiIndex idx(nvars, 0);
    Rat cpow(1);
    for (long m = 0; m <= cap; ++m) {
        idx[var] = m;
        s.set(idx, binom_coeff(alpha, m) * cpow);
        cpow *= c;
    }
    return s;
}

/// Renders a monomial as "q1^a1*q2^a2" (all variables listed, fixed order).
inline std::string monomial_to_string(const MultiIndex& idx) {
    std::string out;
    for (std::size_t v = 0; v < idx.size(); ++v) {
        if (v) out += "*";
        out += "q" + std::to_string(v + 1) + "^" + std::to_string(idx[v]);
    }
    return out;
}

}  // namespace quiveriq
