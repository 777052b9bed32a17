#pragma once

/// \file fixed_points.hpp
/// \brief Torus fixed points of flag-type quiver varieties, the mutation
///        bijection iota, equivariant-parameter sampling and restriction.

#include "quiveriq/quiver.hpp"
#include "quiveriq/rational.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

namespace quiveriq {

/// A torus fixed point: a nested chain C_1 <= C_2 <= ... <= C_{D-1} <= [N_D]
/// of index subsets with |C_i| = N_i, each stored in increasing order.
/// Indices are 1-based elements of [N_D].
struct FixedPointChain {
    std::vector<std::vector<long>> subsets;  ///< subsets[i-1] = C_i

    friend bool operator==(const FixedPointChain&, const FixedPointChain&) = default;
    friend auto operator<=>(const FixedPointChain&, const FixedPointChain&) = default;
};

/// The image of a fixed point under the mutation bijection: C_i for i != k
/// unchanged, and C_k replaced by ck_prime = C_{k+1} \ C_k (with C_{k+1}
/// read as [N_D] when k is the last gauge node).
struct MutatedFixedPoint {
    std::vector<std::vector<long>> subsets;  ///< subsets[i-1] = C_i for i != k
    std::vector<long> ck_prime;              ///< replacement at node k
    long k = 0;

    const std::vector<long>& node(long i) const {
        return i == k ? ck_prime : subsets.at(static_cast<std::size_t>(i - 1));
    }
};

/// Exact rational equivariant parameters: lambdas for the frame torus,
/// etas for the tautological fiber torus. Constructed so that no difference
/// among the values is an integer (genericity).
struct ParamAssignment {
    std::vector<Rat> lambdas;  ///< size N_D
    std::vector<Rat> etas;     ///< size N_0
    unsigned long seed = 0;
};

namespace detail {
inline bool is_prime(long n) {
    if (n < 2) return false;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}
}  // namespace detail

/// Deterministically samples generic parameters from a seed. All values are
/// p/Q with a single prime denominator Q > 4*(N_D + N_0 + max_cap) and
/// pairwise distinct numerators in [1, Q-1]; hence no lambda/eta difference
/// is ever an integer and every I-function denominator is provably nonzero.
inline ParamAssignment sample_params(const AnQuiverSpec& spec, unsigned long seed,
                                     long max_cap = 8) {
    long need = spec.frame_rank + spec.taut_rank;
    long q = 4 * (spec.frame_rank + spec.taut_rank + max_cap) + 1;
    while (!detail::is_prime(q) || q <= need) ++q;

    std::mt19937_64 rng(seed);
    std::vector<long> numerators(static_cast<std::size_t>(q - 1));
    for (long i = 1; i < q; ++i) numerators[static_cast<std::size_t>(i - 1)] = i;
    std::shuffle(numerators.begin(), numerators.end(), rng);

    ParamAssignment out;
    out.seed = seed;
    std::size_t next = 0;
    for (long f = 0; f < spec.frame_rank; ++f) out.lambdas.emplace_back(numerators[next++], q);
    for (long a = 0; a < spec.taut_rank; ++a) out.etas.emplace_back(numerators[next++], q);
    return out;
}

namespace detail {
/// All size-r subsets of the (sorted) pool, in lexicographic order.
inline void subsets_of(const std::vector<long>& pool, long r,
                       std::vector<std::vector<long>>& out) {
    std::vector<long> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (static_cast<long>(cur.size()) == r) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < pool.size(); ++i) {
            cur.push_back(pool[i]);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
}
}  // namespace detail

/// Enumerates all fixed-point chains, in lexicographic order. The count is
/// the product of binomial(N_{i+1}, N_i).
inline std::vector<FixedPointChain> enumerate_fixed_points(const AnQuiverSpec& spec) {
    spec.validate();
    std::vector<long> frame(static_cast<std::size_t>(spec.frame_rank));
    for (long i = 0; i < spec.frame_rank; ++i) frame[static_cast<std::size_t>(i)] = i + 1;

    std::vector<FixedPointChain> acc{FixedPointChain{}};
    // Build chains from the top: choose C_{D-1} inside [N_D], then C_{D-2}
    // inside C_{D-1}, etc.; finally reverse the per-chain subset order.
    for (long i = static_cast<long>(spec.num_gauge()); i >= 1; --i) {
        std::vector<FixedPointChain> nxt;
        for (const auto& partial : acc) {
            const std::vector<long>& pool =
                partial.subsets.empty() ? frame : partial.subsets.back();
            std::vector<std::vector<long>> choices;
            detail::subsets_of(pool, spec.rank(i), choices);
            for (const auto& c : choices) {
                FixedPointChain ext = partial;
                ext.subsets.push_back(c);
                nxt.push_back(std::move(ext));
            }
        }
        acc = std::move(nxt);
    }
    for (auto& fp : acc) std::reverse(fp.subsets.begin(), fp.subsets.end());
    std::sort(acc.begin(), acc.end());
    return acc;
}

/// The mutation bijection on fixed points: keeps C_i (i != k) and replaces
/// C_k by C_{k+1} \ C_k ([N_D] \ C_k when k is the last gauge node).
inline MutatedFixedPoint iota(const AnQuiverSpec& spec, const FixedPointChain& fp, long k) {
    if (k < 1 || k > static_cast<long>(spec.num_gauge()))
        throw ConfigError("iota: node out of range");
    std::vector<long> upper;
    if (k == static_cast<long>(spec.num_gauge())) {
        for (long i = 1; i <= spec.frame_rank; ++i) upper.push_back(i);
    } else {
        upper = fp.subsets[static_cast<std::size_t>(k)];
    }
    const auto& ck = fp.subsets[static_cast<std::size_t>(k - 1)];
    std::vector<long> diff;
    std::set_difference(upper.begin(), upper.end(), ck.begin(), ck.end(),
                        std::back_inserter(diff));
    return MutatedFixedPoint{fp.subsets, std::move(diff), k};
}

/// Restricted Chern roots: values[i-1][I-1] is x^{(i)}_I evaluated at the
/// fixed point, for gauge nodes i = 1..D-1 plus the frame row values[D-1]
/// which is always the full lambda list.
struct ChernAssignment {
    std::vector<std::vector<Rat>> values;

    const std::vector<Rat>& node(long i) const {
        return values.at(static_cast<std::size_t>(i - 1));
    }
};

/// Restriction for an unmutated fixed point: slot I of node i gets the
/// lambda indexed by the I-th element of C_i.
inline ChernAssignment restrict_params(const AnQuiverSpec& spec, const FixedPointChain& fp,
                                       const ParamAssignment& params) {
    ChernAssignment out;
    for (const auto& ci : fp.subsets) {
        std::vector<Rat> row;
        for (long e : ci) row.push_back(params.lambdas.at(static_cast<std::size_t>(e - 1)));
        out.values.push_back(std::move(row));
    }
    out.values.push_back(params.lambdas);
    (void)spec;
    return out;
}

/// Restriction for a mutated fixed point: node-k slots read from ck_prime.
inline ChernAssignment restrict_params(const AnQuiverSpec& spec, const MutatedFixedPoint& mfp,
                                       const ParamAssignment& params) {
    ChernAssignment out;
    for (long i = 1; i <= static_cast<long>(spec.num_gauge()); ++i) {
        std::vector<Rat> row;
        for (long e : mfp.node(i)) row.push_back(params.lambdas.at(static_cast<std::size_t>(e - 1)));
        out.values.push_back(std::move(row));
    }
    out.values.push_back(params.lambdas);
    return out;
}

/// Stable identifier for a fixed point, e.g. "{1,2}<{1,2,3}".
inline std::string fixed_point_id(const FixedPointChain& fp) {
    std::string out;
    for (std::size_t i = 0; i < fp.subsets.size(); ++i) {
        if (i) out += "<";
        out += "{";
        for (std::size_t j = 0; j < fp.subsets[i].size(); ++j) {
            if (j) out += ",";
            out += std::to_string(fp.subsets[i][j]);
        }
        out += "}";
    }
    return out;
}

inline std::string fixed_point_id(const MutatedFixedPoint& mfp) {
    std::string out;
    for (std::size_t i = 0; i < mfp.subsets.size(); ++i) {
        if (i) out += "<";
        bool at_k = (static_cast<long>(i + 1) == mfp.k);
        const auto& s = at_k ? mfp.ck_prime : mfp.subsets[i];
        out += at_k ? "{'" : "{";
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (j) out += ",";
            out += std::to_string(s[j]);
        }
        out += "}";
    }
    return out;
}

}  // namespace quiveriq
