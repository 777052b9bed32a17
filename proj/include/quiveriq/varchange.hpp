#pragma once

/// \file varchange.hpp
/// \brief Monomial-map-with-unit-factors variable changes, the prefactor
///        series, and the reliable-window derivation that says which target
///        coefficients are provably complete after a substitution.

#include "quiveriq/series.hpp"

#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

namespace quiveriq {

struct WindowError : std::runtime_error {
    explicit WindowError(const std::string& what) : std::runtime_error(what) {}
};

struct EmptyWindow : std::runtime_error {
    explicit EmptyWindow(const std::string& what) : std::runtime_error(what) {}
};

/// A multiplicative factor (1 + c*q_var)^{<w, n>} attached to a monomial
/// substitution: its exponent is a per-input-monomial integer.
struct UnitFactor {
    std::size_t var = 0;
    Rat c = Rat(1);
    std::vector<long> w;  ///< weight vector; exponent of the factor is <w, n>
};

/// Substitution q' -> q: an input monomial (q')^n maps to q^{M n} times the
/// unit factors. M is integer and invertible over the rationals.
struct VariableChange {
    std::vector<std::vector<long>> M;  ///< row-major; (M n)_r = sum_c M[r][c] n_c
    std::vector<UnitFactor> units;

    static VariableChange identity(std::size_t n) {
        VariableChange vc;
        vc.M.assign(n, std::vector<long>(n, 0));
        for (std::size_t i = 0; i < n; ++i) vc.M[i][i] = 1;
        return vc;
    }
};

/// The scalar prefactor series multiplying the mutated side of a duality
/// identity: none, exp(c*q_var), or (1+c*q_var)^alpha.
struct Prefactor {
    enum class Kind { none, exp, binom };
    Kind kind = Kind::none;
    Rat c = Rat(1);
    Rat alpha = Rat(0);
    std::size_t var = 0;

    /// Coefficient of q_var^m.
    Rat coeff(long m) const {
        switch (kind) {
            case Kind::none: return m == 0 ? Rat(1) : Rat(0);
            case Kind::exp: {
                Rat cp(1);
                for (long i = 0; i < m; ++i) cp *= c;
                return cp / factorial(m);
            }
            case Kind::binom: {
                Rat cp(1);
                for (long i = 0; i < m; ++i) cp *= c;
                return binom_coeff(alpha, m) * cp;
            }
        }
        return Rat(0);
    }
};

/// What is known about the input series beyond its box: which box edges are
/// mere truncations (support continues past them) and the cross-variable
/// support bound of a mutated node (e_k <= nk_prime * e_{kplus}, with the
/// right-hand side 0 when node k+1 is the frame).
struct SupportInfo {
    std::vector<bool> lo_trunc;  ///< box lo is a truncation, not a support bound
    std::vector<bool> hi_trunc;  ///< box hi is a truncation, not a support bound
    long k = 0;                  ///< 1-based mutated node; 0 = no constraint
    long nk_prime = 0;
    long kplus = 0;  ///< 1-based node above k, or 0 when that is the frame

    static SupportInfo exact(std::size_t nvars) {
        return SupportInfo{std::vector<bool>(nvars, false), std::vector<bool>(nvars, false),
                           0, 0, 0};
    }
};

namespace detail {

/// Rational inverse of a small integer matrix (Gauss-Jordan).
inline std::vector<std::vector<Rat>> invert_matrix(const std::vector<std::vector<long>>& M) {
    std::size_t n = M.size();
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(2 * n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = Rat(M[i][j]);
        a[i][n + i] = Rat(1);
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) throw std::invalid_argument("variable change matrix is singular");
        std::swap(a[col], a[piv]);
        Rat d = a[col][col];
        for (auto& x : a[col]) x /= d;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rat f = a[r][col];
            for (std::size_t j = 0; j < 2 * n; ++j) a[r][j] -= f * a[col][j];
        }
    }
    std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
    return inv;
}

inline std::optional<MultiIndex> integer_point(const std::vector<Rat>& v) {
    MultiIndex out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (denominator(v[i]) != 1) return std::nullopt;
        out[i] = static_cast<long>(numerator(v[i]));
    }
    return out;
}

}  // namespace quiveriq::detail

/// Tracks preimages of a target monomial under a VariableChange whose unit
/// factors (and optional prefactor) all live in a single tail variable.
class ChangeInverter {
public:
    ChangeInverter(const VariableChange& vc, bool has_tail)
        : vc_(vc), minv_(detail::invert_matrix(vc.M)), has_tail_(has_tail) {
        for (const auto& u : vc.units) {
            if (!tail_var_) tail_var_ = u.var;
            if (*tail_var_ != u.var)
                throw std::invalid_argument("unit factors must share one variable");
            has_tail_ = true;
        }
    }

    std::size_t nvars() const { return vc_.M.size(); }
    bool has_tail() const { return has_tail_; }
    std::size_t tail_var() const { return tail_var_.value_or(tail_var_default_); }
    void set_tail_var(std::size_t v) { tail_var_default_ = v; }

    /// Preimage e with M e + m*unit_var = beta (may be non-integral).
    std::vector<Rat> preimage(const MultiIndex& beta, long m) const {
        std::size_t n = nvars();
        std::vector<Rat> rhs(n);
        for (std::size_t i = 0; i < n; ++i) {
            rhs[i] = Rat(beta[i]);
            if (has_tail_ && i == tail_var()) rhs[i] -= m;
        }
        std::vector<Rat> e(n, Rat(0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) e[i] += minv_[i][j] * rhs[j];
        return e;
    }

private:
    const VariableChange& vc_;
    std::vector<std::vector<Rat>> minv_;
    bool has_tail_;
    std::optional<std::size_t> tail_var_;
    std::size_t tail_var_default_ = 0;
};

namespace detail {

inline bool support_feasible(const std::vector<Rat>& e, const Box& box, const SupportInfo& sup) {
    for (std::size_t v = 0; v < box.size(); ++v) {
        if (!sup.lo_trunc[v] && e[v] < box[v].lo) return false;
        if (!sup.hi_trunc[v] && box[v].hi < kUnbounded && e[v] > box[v].hi) return false;
    }
    if (sup.k >= 1) {
        Rat bound = sup.kplus >= 1 ? Rat(sup.nk_prime) * e[static_cast<std::size_t>(sup.kplus - 1)]
                                   : Rat(0);
        if (e[static_cast<std::size_t>(sup.k - 1)] > bound) return false;
    }
    return true;
}

inline bool inside_box(const MultiIndex& e, const Box& box) {
    for (std::size_t v = 0; v < box.size(); ++v)
        if (e[v] < box[v].lo || e[v] > box[v].hi) return false;
    return true;
}

}  // namespace quiveriq::detail

/// True iff the coefficient of `beta` in the substituted series is provably
/// complete: every preimage class that could contribute (given the support
/// facts) lies inside the enumerated input box. Tail orders m >= 0 walk the
/// preimage along -M^{-1}(unit var); the loop stops once support feasibility
/// is lost for good (the walk is affine, so each violated exact bound stays
/// violated).
inline bool window_contains(const ChangeInverter& inv, const Box& in_box,
                            const SupportInfo& sup, const MultiIndex& beta,
                            long max_tail = 4096) {
    long mmax = inv.has_tail() ? max_tail : 0;
    bool any_feasible_tail = false;
    for (long m = 0; m <= mmax; ++m) {
        auto e = inv.preimage(beta, m);
        bool feasible = detail::support_feasible(e, in_box, sup);
        if (feasible) any_feasible_tail = true;
        if (!feasible && any_feasible_tail) break;  // affine walk left the support cone
        if (!feasible) continue;
        auto ip = detail::integer_point(e);
        if (ip && !detail::inside_box(*ip, in_box)) return false;
    }
    return true;
}

/// The set of target monomials inside `target` whose substituted coefficient
/// is provably complete. `has_tail` marks an infinite prefactor tail even
/// when the unit list is empty.
inline std::set<MultiIndex> reliable_window(const Box& in_box, const VariableChange& vc,
                                            const Box& target, const SupportInfo& sup,
                                            bool prefactor_tail = false,
                                            std::size_t prefactor_var = 0) {
    ChangeInverter inv(vc, prefactor_tail);
    inv.set_tail_var(prefactor_var);
    std::set<MultiIndex> out;
    MultiIndex beta(target.size());
    auto rec = [&](auto&& self, std::size_t pos) -> void {
        if (pos == target.size()) {
            if (window_contains(inv, in_box, sup, beta)) out.insert(beta);
            return;
        }
        if (target[pos].hi >= kUnbounded)
            throw std::invalid_argument("reliable_window: target box must be finite");
        for (long b = target[pos].lo; b <= target[pos].hi; ++b) {
            beta[pos] = b;
            self(self, pos + 1);
        }
    };
    rec(rec, 0);
    if (out.empty()) throw EmptyWindow("reliable_window: no complete target monomial");
    return out;
}

/// Applies a variable change (optionally fused with a prefactor series) to a
/// truncated series: each stored monomial n with coefficient a emits
/// a * q^{M n} * prefactor * prod_j (1+c_j q)^{<w_j, n>} expanded into the
/// target box. Throws WindowError if any target-box coefficient is not
/// provably complete given the input box and support facts.
inline LaurentSeries apply_variable_change(const LaurentSeries& s, const VariableChange& vc,
                                           const Box& cap_box,
                                           const Prefactor& pre = Prefactor{},
                                           const SupportInfo* sup_in = nullptr,
                                           bool require_complete = true) {
    std::size_t n = s.nvars();
    if (vc.M.size() != n) throw std::invalid_argument("apply_variable_change: size mismatch");
    SupportInfo sup = sup_in ? *sup_in : SupportInfo::exact(n);

    bool pre_tail = pre.kind != Prefactor::Kind::none;
    ChangeInverter inv(vc, pre_tail);
    inv.set_tail_var(pre.var);
    MultiIndex beta(n);
    auto check = [&](auto&& self, std::size_t pos) -> void {
        if (pos == n) {
            if (!window_contains(inv, s.box(), sup, beta))
                throw WindowError("apply_variable_change: cap_box exceeds reliable window at " +
                                  monomial_to_string(beta));
            return;
        }
        for (long b = cap_box[pos].lo; b <= cap_box[pos].hi; ++b) {
            beta[pos] = b;
            self(self, pos + 1);
        }
    };
    for (std::size_t v = 0; v < n; ++v)
        if (cap_box[v].hi >= kUnbounded)
            throw std::invalid_argument("apply_variable_change: cap_box must be finite");
    if (require_complete) check(check, 0);

    LaurentSeries out(cap_box);
    std::size_t tv = inv.tail_var();
    bool has_tail = inv.has_tail();
    for (const auto& [e, a] : s.coeffs()) {
        // Base image monomial M e.
        MultiIndex base(n, 0);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) base[r] += vc.M[r][c] * e[c];
        // Tail order budget in the tail variable.
        long budget = 0;
        if (has_tail) budget = std::max(cap_box[tv].hi - base[tv], 0L);
        // Convolve prefactor and unit expansions up to the budget.
        std::vector<Rat> tail(static_cast<std::size_t>(budget) + 1, Rat(0));
        tail[0] = Rat(1);
        auto convolve_pow = [&](const Rat& c, const Rat& alpha_exp) {
            std::vector<Rat> nxt(tail.size(), Rat(0));
            Rat cp(1);
            for (long m = 0; m <= budget; ++m) {
                Rat coef = binom_coeff(alpha_exp, m) * cp;
                cp *= c;
                for (long t = 0; m + t <= budget; ++t)
                    nxt[static_cast<std::size_t>(m + t)] += coef * tail[static_cast<std::size_t>(t)];
            }
            tail = std::move(nxt);
        };
        if (pre.kind == Prefactor::Kind::binom) {
            convolve_pow(pre.c, pre.alpha);
        } else if (pre.kind == Prefactor::Kind::exp) {
            std::vector<Rat> nxt(tail.size(), Rat(0));
            for (long m = 0; m <= budget; ++m) {
                Rat coef = pre.coeff(m);
                for (long t = 0; m + t <= budget; ++t)
                    nxt[static_cast<std::size_t>(m + t)] += coef * tail[static_cast<std::size_t>(t)];
            }
            tail = std::move(nxt);
        }
        for (const auto& u : vc.units) {
            long p = 0;
            for (std::size_t c = 0; c < n; ++c) p += u.w[c] * e[c];
            convolve_pow(u.c, Rat(p));
        }
        // Emit base + m * tail_var.
        MultiIndex idx = base;
        for (long m = 0; m <= budget; ++m) {
            if (has_tail) idx[tv] = base[tv] + m;
            out.add_to(idx, a * tail[static_cast<std::size_t>(m)]);
            if (!has_tail) break;
        }
    }
    return out;
}

}  // namespace quiveriq
