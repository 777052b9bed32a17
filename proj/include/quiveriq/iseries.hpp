#pragma once

/// \file iseries.hpp
/// \brief Fixed-point-restricted, truncated equivariant quasimap I-functions
///        for the six geometries: Grassmannian / flag / tautological bundle,
///        each before and after mutation.

#include "quiveriq/effective.hpp"
#include "quiveriq/fixed_points.hpp"
#include "quiveriq/series.hpp"

#include <vector>

namespace quiveriq {

// ---------------------------------------------------------------------------
// Grassmannian building block (single gauge node, direct restricted formulas)
// ---------------------------------------------------------------------------

/// Restricted I-function of S_1^{N0} -> Gr(N1, N2) at the fixed point given
/// by a size-N1 subset fp of [N2] (1-based); one variable q, degrees <= cap.
inline LaurentSeries i_bm_gr(long N0, long N1, long N2, const std::vector<long>& fp,
                             const ParamAssignment& params, long cap) {
    Box box(1);
    box[0].hi = cap;
    LaurentSeries out(box);
    auto lam = [&](long f) { return params.lambdas.at(static_cast<std::size_t>(f - 1)); };
    detail::enumerate_vectors(
        static_cast<std::size_t>(N1), 0, cap, 0, cap, [&](const std::vector<long>& d) {
            long total = 0;
            for (long v : d) total += v;
            Rat term(sign_pow((N1 - 1) * total));
            for (long I = 0; I < N1; ++I)
                for (long J = I + 1; J < N1; ++J) {
                    Rat diff = lam(fp[I]) - lam(fp[J]);
                    term *= (diff + d[I] - d[J]) / diff;
                }
            for (long I = 0; I < N1; ++I) {
                for (long A = 0; A < N0; ++A)
                    for (long l = 0; l < d[I]; ++l)
                        term *= -lam(fp[I]) + params.etas[static_cast<std::size_t>(A)] - l;
                for (long F = 1; F <= N2; ++F)
                    for (long l = 1; l <= d[I]; ++l) {
                        Rat den = lam(fp[I]) - lam(F) + l;
                        if (den == 0) throw PoleError("i_bm_gr: non-generic parameters");
                        term /= den;
                    }
            }
            out.add_to(MultiIndex{total}, term);
        });
    return out;
}

/// Restricted I-function of the mutated Grassmannian geometry at the
/// complementary fixed point fp_c (size N1'); Laurent exponents in [-cap, 0].
inline LaurentSeries i_am_gr(long N0, long N1p, long N2, const std::vector<long>& fp_c,
                             const ParamAssignment& params, long cap) {
    Box box(1);
    box[0].lo = -cap;
    box[0].hi = 0;
    LaurentSeries out(box);
    auto lam = [&](long f) { return params.lambdas.at(static_cast<std::size_t>(f - 1)); };
    detail::enumerate_vectors(
        static_cast<std::size_t>(N1p), -cap, 0, -cap, 0, [&](const std::vector<long>& d) {
            long total = 0;
            for (long v : d) total += v;
            Rat term(sign_pow((N1p - 1) * total));
            for (long I = 0; I < N1p; ++I)
                for (long J = I + 1; J < N1p; ++J) {
                    Rat diff = lam(fp_c[I]) - lam(fp_c[J]);
                    term *= (diff + d[I] - d[J]) / diff;
                }
            for (long I = 0; I < N1p; ++I) {
                for (long A = 0; A < N0; ++A)
                    for (long l = 1; l <= -d[I]; ++l)
                        term *= -lam(fp_c[I]) + params.etas[static_cast<std::size_t>(A)] + l;
                for (long F = 1; F <= N2; ++F)
                    for (long l = 1; l <= -d[I]; ++l) {
                        Rat den = -lam(fp_c[I]) + lam(F) + l;
                        if (den == 0) throw PoleError("i_am_gr: non-generic parameters");
                        term /= den;
                    }
            }
            out.add_to(MultiIndex{total}, term);
        });
    return out;
}

// ---------------------------------------------------------------------------
// General flag / tautological evaluators (ratio-product term forms)
// ---------------------------------------------------------------------------

namespace detail {

/// One term of the unmutated flag I-function: for every gauge node, the Weyl
/// ("Sym") factor and the arrow factor toward the next node up (the frame
/// carrying degree 0). Returns exact 0 on any structural zero.
inline Rat term_flag_bm(const AnQuiverSpec& spec, const ChernAssignment& X,
                        const DegreeVector& m) {
    long D1 = static_cast<long>(spec.num_gauge());
    Rat term(1);
    for (long i = 1; i <= D1; ++i) {
        const auto& xi = X.node(i);
        const auto& mi = m[static_cast<std::size_t>(i - 1)];
        for (std::size_t I = 0; I < xi.size(); ++I)
            for (std::size_t J = 0; J < xi.size(); ++J) {
                if (I == J) continue;
                Rat f = inv_ratio_prod(xi[I] - xi[J], mi[I] - mi[J]);
                if (f == 0) return Rat(0);
                term *= f;
            }
        const auto& xu = X.node(i + 1);
        std::vector<long> mu = (i < D1) ? m[static_cast<std::size_t>(i)]
                                        : std::vector<long>(xu.size(), 0);
        for (std::size_t I = 0; I < xi.size(); ++I)
            for (std::size_t J = 0; J < xu.size(); ++J) {
                Rat f = ratio_prod(xi[I] - xu[J], mi[I] - mu[J]);
                if (f == 0) return Rat(0);
                term *= f;
            }
    }
    return term;
}

/// Tautological twist on node 1 (the N0 copies of S_1): a polynomial factor
/// for each eta and each node-1 slot.
inline Rat twist_node1(const std::vector<Rat>& etas, const std::vector<Rat>& x1,
                       const std::vector<long>& m1) {
    Rat term(1);
    for (const Rat& eta : etas)
        for (std::size_t J = 0; J < x1.size(); ++J) {
            Rat f = ratio_prod(eta - x1[J], -m1[J]);
            if (f == 0) return Rat(0);
            term *= f;
        }
    return term;
}

enum class AmTwist { none, node1, node1_dual };

/// One term of the mutated I-function (mutation at node k): generic nodes
/// carry Sym+arrow factors, node k-1 points at node k+1, node k receives a
/// reversed arrow from node k+1, and the complete-intersection factor pairs
/// node k with node k-1. AmTwist selects the tautological decoration:
/// node1 for mutation away from node 1, node1_dual for mutation at node 1
/// (twist migrates to node 2 and an eta complete-intersection factor appears).
inline Rat term_flag_am(const MutatedQuiverSpec& mut, const ChernAssignment& X,
                        const DegreeVector& n, const std::vector<Rat>& etas, AmTwist twist) {
    long D1 = static_cast<long>(mut.base.num_gauge());
    long k = mut.k;
    auto node_x = [&](long i) -> const std::vector<Rat>& { return X.node(i); };
    auto node_deg = [&](long i) -> std::vector<long> {
        if (i == D1 + 1) return std::vector<long>(X.node(i).size(), 0);
        return n[static_cast<std::size_t>(i - 1)];
    };

    Rat term(1);
    auto mul = [&](const Rat& f) {
        term *= f;
        return f != 0;
    };
    auto sym_factor = [&](long i) {
        const auto& xi = node_x(i);
        auto ni = node_deg(i);
        for (std::size_t I = 0; I < xi.size(); ++I)
            for (std::size_t J = 0; J < xi.size(); ++J) {
                if (I == J) continue;
                if (!mul(inv_ratio_prod(xi[I] - xi[J], ni[I] - ni[J]))) return false;
            }
        return true;
    };
    auto arrow_factor = [&](long from, long to) {
        const auto& xa = node_x(from);
        const auto& xb = node_x(to);
        auto na = node_deg(from);
        auto nb = node_deg(to);
        for (std::size_t I = 0; I < xa.size(); ++I)
            for (std::size_t J = 0; J < xb.size(); ++J)
                if (!mul(ratio_prod(xa[I] - xb[J], na[I] - nb[J]))) return false;
        return true;
    };

    for (long i = 1; i <= D1; ++i) {
        if (i == k - 1 || i == k) continue;
        if (!sym_factor(i) || !arrow_factor(i, i + 1)) return Rat(0);
    }
    if (k >= 2 && !(sym_factor(k - 1) && arrow_factor(k - 1, k + 1))) return Rat(0);
    if (!sym_factor(k) || !arrow_factor(k + 1, k)) return Rat(0);
    if (k >= 2) {
        // Complete-intersection numerator factor pairing node k with node k-1.
        const auto& xk = node_x(k);
        const auto& xd = node_x(k - 1);
        auto nk = node_deg(k);
        auto nd = node_deg(k - 1);
        for (std::size_t I = 0; I < xk.size(); ++I)
            for (std::size_t J = 0; J < xd.size(); ++J)
                if (!mul(inv_ratio_prod(-xk[I] + xd[J], -nk[I] + nd[J]))) return Rat(0);
    }

    if (twist == AmTwist::node1) {
        Rat f = twist_node1(etas, node_x(1), node_deg(1));
        if (f == 0) return Rat(0);
        term *= f;
    } else if (twist == AmTwist::node1_dual) {
        // Mutation at node 1: the N0-twist sits on node 2 and node 1 carries
        // the eta complete-intersection factor.
        Rat f = twist_node1(etas, node_x(2), node_deg(2));
        if (f == 0) return Rat(0);
        term *= f;
        const auto& x1 = node_x(1);
        auto n1 = node_deg(1);
        for (std::size_t I = 0; I < x1.size(); ++I)
            for (const Rat& eta : etas)
                if (!mul(inv_ratio_prod(-x1[I] + eta, -n1[I]))) return Rat(0);
    }
    return term;
}

inline MultiIndex degree_monomial(const DegreeVector& m) {
    MultiIndex idx(m.size(), 0);
    for (std::size_t i = 0; i < m.size(); ++i)
        for (long v : m[i]) idx[i] += v;
    return idx;
}

}  // namespace detail

/// Truncated restricted I-function of the flag variety F(N1,..,N_{D-1}; N_D)
/// (requires taut_rank == 0); caps bound each |m^{(i)}|.
inline LaurentSeries i_bm_flag(const AnQuiverSpec& spec, const ChernAssignment& X,
                               const std::vector<long>& caps, bool apply_conditions = true) {
    Box box(spec.num_gauge());
    for (std::size_t v = 0; v < box.size(); ++v) box[v].hi = caps[v];
    LaurentSeries out(box);
    EffBox eb{caps, 0, 0, 0, 0, 0};
    eff_flag_enumerate(spec, eb, apply_conditions, [&](const DegreeVector& m) {
        out.add_to(detail::degree_monomial(m), detail::term_flag_bm(spec, X, m));
    });
    return out;
}

/// Truncated restricted I-function of S_1^{N0} over the flag (reduces to
/// i_bm_flag when taut_rank == 0).
inline LaurentSeries i_bm_tautf(const AnQuiverSpec& spec, const ChernAssignment& X,
                                const ParamAssignment& params, const std::vector<long>& caps,
                                bool apply_conditions = true) {
    Box box(spec.num_gauge());
    for (std::size_t v = 0; v < box.size(); ++v) box[v].hi = caps[v];
    LaurentSeries out(box);
    EffBox eb{caps, 0, 0, 0, 0, 0};
    eff_flag_enumerate(spec, eb, apply_conditions, [&](const DegreeVector& m) {
        Rat t = detail::term_flag_bm(spec, X, m);
        if (t != 0) t *= detail::twist_node1(params.etas, X.node(1), m[0]);
        out.add_to(detail::degree_monomial(m), t);
    });
    return out;
}

/// Enumeration box for the mutated side matching bm caps: node i != k keeps
/// cap_i; the node-k total degree window is [-cap_k, N_k' * cap_up] where
/// cap_up is the cap above node k (0 when node k+1 is the frame), and the
/// per-entry window is wide enough to cover every class in the sum window.
inline EffBox am_eff_box(const MutatedQuiverSpec& mut, const std::vector<long>& caps) {
    long D1 = static_cast<long>(mut.base.num_gauge());
    long cap_up = (mut.k < D1) ? caps[static_cast<std::size_t>(mut.k)] : 0;
    EffBox eb;
    eb.caps = caps;
    eb.k = mut.k;
    eb.sum_lo = -caps[static_cast<std::size_t>(mut.k - 1)];
    eb.sum_hi = mut.nk_prime * cap_up;
    eb.entry_hi = cap_up;
    eb.entry_lo = eb.sum_lo - (std::max(mut.nk_prime, 1L) - 1) * cap_up;
    return eb;
}

namespace detail {

inline LaurentSeries i_am_core(const MutatedQuiverSpec& mut, const ChernAssignment& X,
                               const std::vector<Rat>& etas, AmTwist twist,
                               const std::vector<long>& caps, bool apply_conditions) {
    EffBox eb = am_eff_box(mut, caps);
    Box box(mut.base.num_gauge());
    for (std::size_t v = 0; v < box.size(); ++v) {
        box[v].hi = eb.caps[v];
        if (static_cast<long>(v + 1) == mut.k) {
            box[v].lo = eb.sum_lo;
            box[v].hi = eb.sum_hi;
        }
    }
    LaurentSeries out(box);
    eff_dflag_enumerate(mut, eb, apply_conditions, [&](const DegreeVector& n) {
        out.add_to(degree_monomial(n), term_flag_am(mut, X, n, etas, twist));
    });
    return out;
}

}  // namespace detail

/// Truncated restricted I-function of the quiver mutated at node k (plain
/// flag, taut_rank == 0). The node-k Laurent exponent is |n^{(k)}| and may
/// be negative.
inline LaurentSeries i_am_flag(const MutatedQuiverSpec& mut, const ChernAssignment& X,
                               const std::vector<long>& caps, bool apply_conditions = true) {
    return detail::i_am_core(mut, X, {}, detail::AmTwist::none, caps, apply_conditions);
}

/// Mutated tautological geometry, mutation at k != 1: the N0-twist stays on
/// node 1.
inline LaurentSeries i_am_tautf_k(const MutatedQuiverSpec& mut, const ChernAssignment& X,
                                  const ParamAssignment& params, const std::vector<long>& caps,
                                  bool apply_conditions = true) {
    return detail::i_am_core(mut, X, params.etas, detail::AmTwist::node1, caps, apply_conditions);
}

/// Mutated tautological geometry, mutation at k == 1: node 1 has rank N_1',
/// the twist migrates to node 2 and node 1 carries the eta
/// complete-intersection factor.
inline LaurentSeries i_am_tautf_1(const MutatedQuiverSpec& mut, const ChernAssignment& X,
                                  const ParamAssignment& params, const std::vector<long>& caps,
                                  bool apply_conditions = true) {
    return detail::i_am_core(mut, X, params.etas, detail::AmTwist::node1_dual, caps,
                             apply_conditions);
}

}  // namespace quiveriq
