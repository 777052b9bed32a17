#pragma once

/// \file appendix.hpp
/// \brief Independent Pochhammer-form coefficient formulas, hypergeometric
///        identities and a residue cross-check, used as oracles against the
///        series evaluators.

#include "quiveriq/fixed_points.hpp"
#include "quiveriq/rational.hpp"

#include <string>
#include <vector>

namespace quiveriq {

namespace detail {

/// Complement of a sorted 1-based subset inside [N].
inline std::vector<long> complement_in(const std::vector<long>& fp, long N) {
    std::vector<long> out;
    std::size_t pos = 0;
    for (long v = 1; v <= N; ++v) {
        if (pos < fp.size() && fp[pos] == v) {
            ++pos;
        } else {
            out.push_back(v);
        }
    }
    return out;
}

/// All compositions of total into n nonnegative parts.
template <typename Fn>
inline void compositions(long total, std::size_t n, Fn&& fn) {
    std::vector<long> d(n, 0);
    auto rec = [&](auto&& self, std::size_t pos, long rem) -> void {
        if (pos + 1 == n) {
            d[pos] = rem;
            fn(d);
            return;
        }
        for (long v = 0; v <= rem; ++v) {
            d[pos] = v;
            self(self, pos + 1, rem - v);
        }
    };
    if (n == 0) {
        if (total == 0) fn(d);
        return;
    }
    rec(rec, 0, total);
}

}  // namespace quiveriq::detail

/// Pochhammer-form degree-d coefficient of the restricted I-function of
/// S_1^{N0} -> Gr(N1, N2) at the fixed point fp (sorted subset of [N2]):
///   (-1)^{(N1-1+N0)d} sum_{|d|=d} prod_{I!=J} 1/(l_{f_J}-l_{f_I}-d_I)_{d_J}
///   prod_I prod_A (l_{f_I}-eta_A)_{d_I} / (d_I! prod_{F in fp^c}(l_{f_I}-l_F+1)_{d_I}).
inline Rat i_bm_d_direct(long N0, long N1, long N2, const std::vector<long>& fp,
                         const ParamAssignment& params, long d) {
    if (d < 0) throw std::invalid_argument("i_bm_d_direct: d must be >= 0");
    auto lam = [&](long f) { return params.lambdas.at(static_cast<std::size_t>(f - 1)); };
    auto fpc = detail::complement_in(fp, N2);
    Rat total(0);
    detail::compositions(d, static_cast<std::size_t>(N1), [&](const std::vector<long>& dv) {
        Rat term(sign_pow((N1 - 1 + N0) * d));
        for (long I = 0; I < N1; ++I)
            for (long J = 0; J < N1; ++J) {
                if (I == J) continue;
                Rat p = pochhammer(lam(fp[static_cast<std::size_t>(J)]) -
                                       lam(fp[static_cast<std::size_t>(I)]) - dv[I],
                                   dv[J]);
                if (p == 0) throw PoleError("i_bm_d_direct: degenerate parameters");
                term /= p;
            }
        for (long I = 0; I < N1; ++I) {
            Rat lfi = lam(fp[static_cast<std::size_t>(I)]);
            for (long A = 0; A < N0; ++A)
                term *= pochhammer(lfi - params.etas[static_cast<std::size_t>(A)], dv[I]);
            term /= factorial(dv[I]);
            for (long F : fpc) {
                Rat p = pochhammer(lfi - lam(F) + 1, dv[I]);
                if (p == 0) throw PoleError("i_bm_d_direct: degenerate parameters");
                term /= p;
            }
        }
        total += term;
    });
    return total;
}

/// Pochhammer-form coefficient of (q')^{-n} of the mutated I-function at the
/// complementary fixed point fp_c (size N1' = N2 - N1):
///   (-1)^{(N1'-1)n} sum_{|n|=n} prod_{I!=J} 1/(l_{f'_J}-l_{f'_I}-n_J)_{n_I}
///   prod_I prod_A (-l_{f'_I}+eta_A+1)_{n_I} / (n_I! prod_{F in fp}(l_F-l_{f'_I}+1)_{n_I}).
inline Rat i_am_d_direct(long N0, long N1prime, long N2, const std::vector<long>& fp_c,
                         const ParamAssignment& params, long n) {
    if (n < 0) throw std::invalid_argument("i_am_d_direct: n must be >= 0");
    auto lam = [&](long f) { return params.lambdas.at(static_cast<std::size_t>(f - 1)); };
    auto fp = detail::complement_in(fp_c, N2);
    Rat total(0);
    detail::compositions(n, static_cast<std::size_t>(N1prime), [&](const std::vector<long>& nv) {
        Rat term(sign_pow((N1prime - 1) * n));
        for (long I = 0; I < N1prime; ++I)
            for (long J = 0; J < N1prime; ++J) {
                if (I == J) continue;
                Rat p = pochhammer(lam(fp_c[static_cast<std::size_t>(J)]) -
                                       lam(fp_c[static_cast<std::size_t>(I)]) - nv[J],
                                   nv[I]);
                if (p == 0) throw PoleError("i_am_d_direct: degenerate parameters");
                term /= p;
            }
        for (long I = 0; I < N1prime; ++I) {
            Rat lfi = lam(fp_c[static_cast<std::size_t>(I)]);
            for (long A = 0; A < N0; ++A)
                term *= pochhammer(-lfi + params.etas[static_cast<std::size_t>(A)] + 1, nv[I]);
            term /= factorial(nv[I]);
            for (long F : fp) {
                Rat p = pochhammer(lam(F) - lfi + 1, nv[I]);
                if (p == 0) throw PoleError("i_am_d_direct: degenerate parameters");
                term /= p;
            }
        }
        total += term;
    });
    return total;
}

/// (-a)_n == (-1)^n (a+1-n)_n.
inline bool check_identity_A1(const Rat& a, long n) {
    return pochhammer(-a, n) == Rat(sign_pow(n)) * pochhammer(a + 1 - n, n);
}

/// (x1-x2+d1-d2) / ((x1-x2)(x1-x2+1)_{d1}(x2-x1+1)_{d2})
///   == 1 / ((x1-x2-d2)_{d1}(x2-x1-d1)_{d2}).
inline bool check_identity_A2(const Rat& x1, const Rat& x2, long d1, long d2) {
    Rat diff = x1 - x2;
    Rat lden = diff * pochhammer(diff + 1, d1) * pochhammer(-diff + 1, d2);
    Rat rden = pochhammer(diff - d2, d1) * pochhammer(-diff - d1, d2);
    if (lden == 0 || rden == 0) throw PoleError("check_identity_A2: degenerate inputs");
    return (diff + d1 - d2) / lden == Rat(1) / rden;
}

/// 1 + (m-l)/a == (a+1)_m (-a+1)_l / ((a-l)_m (-a-m)_l).
inline bool check_identity_A7(const Rat& a, long m, long l) {
    if (a == 0) throw PoleError("check_identity_A7: a must be nonzero");
    Rat rden = pochhammer(a - l, m) * pochhammer(-a - m, l);
    if (rden == 0) throw PoleError("check_identity_A7: degenerate inputs");
    return Rat(1) + (Rat(m) - l) / a == pochhammer(a + 1, m) * pochhammer(-a + 1, l) / rden;
}

/// Gap-one relation (N2 = N0+1):
///   I^bm_d = sum_{i=0}^d (-1)^{N1'(d-i)} / (d-i)! * I^am_i.
inline bool relation_gap_one(long N0, long N1, long N2, const std::vector<long>& fp,
                             const ParamAssignment& params, long d) {
    if (N2 != N0 + 1) throw ConfigError("relation_gap_one requires N2 = N0 + 1");
    long N1p = N2 - N1;
    auto fpc = detail::complement_in(fp, N2);
    Rat lhs = i_bm_d_direct(N0, N1, N2, fp, params, d);
    Rat rhs(0);
    for (long i = 0; i <= d; ++i)
        rhs += Rat(sign_pow(N1p * (d - i))) / factorial(d - i) *
               i_am_d_direct(N0, N1p, N2, fpc, params, i);
    return lhs == rhs;
}

/// Equal-rank relation (N0 = N2):
///   I^bm_d = sum_m (-1)^{(N2-N1)m} C(sum eta - sum lambda + N2 - N1, m) I^am_{d-m}
/// with C the generalized binomial coefficient.
inline bool relation_equal(long N0, long N1, long N2, const std::vector<long>& fp,
                           const ParamAssignment& params, long d) {
    if (N0 != N2) throw ConfigError("relation_equal requires N0 = N2");
    long N1p = N2 - N1;
    auto fpc = detail::complement_in(fp, N2);
    Rat alpha(0);
    for (const Rat& e : params.etas) alpha += e;
    for (long F = 1; F <= N2; ++F) alpha -= params.lambdas[static_cast<std::size_t>(F - 1)];
    alpha += N2 - N1;
    Rat lhs = i_bm_d_direct(N0, N1, N2, fp, params, d);
    Rat rhs(0);
    for (long m = 0; m <= d; ++m)
        rhs += Rat(sign_pow(N1p * m)) * binom_coeff(alpha, m) *
               i_am_d_direct(N0, N1p, N2, fpc, params, d - m);
    return lhs == rhs;
}

enum class ResidueOutcome { Pass, Fail, NotApplicable };

struct ResidueTerm {
    Rat pole;
    Rat residue;
    bool left = false;  ///< left half-plane pole (else right)
};

struct ResidueCheck {
    ResidueOutcome outcome = ResidueOutcome::NotApplicable;
    std::vector<ResidueTerm> terms;
    Rat sum_right;
    Rat sum_left;
    Rat i_bm_1;
    Rat i_am_1;
};

/// Degree-1 residue cross-check for f(phi) =
///   prod_A (eta_A - phi) / (prod_{I in fp}(l_{f_I} - phi) prod_{I' in fp^c}(phi - l_{f'_I} + 1)):
/// right-half poles at phi = l_{f_I} sum to -I^bm_1, left-half poles at
/// phi = l_{f'_I} - 1 sum to +I^am_1, and all residues sum to zero. Requires
/// decay at infinity, i.e. N2 - N0 >= 2; otherwise NotApplicable.
inline ResidueCheck residue_check_d1(long N0, long N1, long N2, const std::vector<long>& fp,
                                     const ParamAssignment& params) {
    ResidueCheck rc;
    if (N2 - N0 < 2) {
        rc.outcome = ResidueOutcome::NotApplicable;
        return rc;
    }
    auto lam = [&](long f) { return params.lambdas.at(static_cast<std::size_t>(f - 1)); };
    auto fpc = detail::complement_in(fp, N2);
    long N1p = N2 - N1;

    auto f_without = [&](const Rat& phi, long skip_fp, long skip_fpc) {
        Rat v(1);
        for (long A = 0; A < N0; ++A) v *= params.etas[static_cast<std::size_t>(A)] - phi;
        for (long I = 0; I < N1; ++I) {
            if (I == skip_fp) continue;
            Rat den = lam(fp[static_cast<std::size_t>(I)]) - phi;
            if (den == 0) throw PoleError("residue_check_d1: double pole");
            v /= den;
        }
        for (long I = 0; I < N1p; ++I) {
            if (I == skip_fpc) continue;
            Rat den = phi - lam(fpc[static_cast<std::size_t>(I)]) + 1;
            if (den == 0) throw PoleError("residue_check_d1: double pole");
            v /= den;
        }
        return v;
    };

    rc.sum_right = Rat(0);
    rc.sum_left = Rat(0);
    for (long I = 0; I < N1; ++I) {
        // Pole factor (l_{f_I} - phi): residue carries a sign flip.
        Rat phi = lam(fp[static_cast<std::size_t>(I)]);
        Rat res = -f_without(phi, I, -1);
        rc.terms.push_back({phi, res, false});
        rc.sum_right += res;
    }
    for (long I = 0; I < N1p; ++I) {
        Rat phi = lam(fpc[static_cast<std::size_t>(I)]) - 1;
        Rat res = f_without(phi, -1, I);
        rc.terms.push_back({phi, res, true});
        rc.sum_left += res;
    }

    rc.i_bm_1 = i_bm_d_direct(N0, N1, N2, fp, params, 1);
    rc.i_am_1 = i_am_d_direct(N0, N1p, N2, fpc, params, 1);
    bool ok = rc.sum_right == -rc.i_bm_1 && rc.sum_left == rc.i_am_1 &&
              rc.sum_right + rc.sum_left == 0;
    rc.outcome = ok ? ResidueOutcome::Pass : ResidueOutcome::Fail;
    return rc;
}

}  // namespace quiveriq
