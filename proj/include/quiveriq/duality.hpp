#pragma once

/// \file duality.hpp
/// \brief Case classification, variable-change construction and exact
///        coefficient-level verification of the mutation identities between
///        the original and mutated quiver I-functions.

#include "quiveriq/iseries.hpp"
#include "quiveriq/varchange.hpp"

#include <atomic>
#include <cstdlib>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace quiveriq {

enum class CaseTag { GapAtLeast2, GapOne, Equal };

inline std::string case_tag_name(CaseTag t) {
    switch (t) {
        case CaseTag::GapAtLeast2: return "GapAtLeast2";
        case CaseTag::GapOne: return "GapOne";
        case CaseTag::Equal: return "Equal";
    }
    return "?";
}

/// The two candidate substitutions on q_{k-1} in the equal-rank flag case;
/// the literature states both, so the verifier runs both and reports which
/// one holds. `divide` is q_{k-1}' = q_{k-1}/(1+q_k), `multiply` is
/// q_{k-1}' = q_{k-1}(1+q_k).
enum class EqualFlagDirection { divide, multiply };

inline std::string direction_name(EqualFlagDirection d) {
    return d == EqualFlagDirection::divide ? "divide" : "multiply";
}

/// Classified duality case: tag, prefactor template (the binomial alpha is
/// fixed-point dependent and filled in at verification time), and the
/// variable change. For the Equal flag case `change_alt` carries the second
/// candidate direction.
struct DualityCase {
    CaseTag tag = CaseTag::GapAtLeast2;
    bool binom_prefactor = false;  ///< Equal + tautological mutation at node 1
    Prefactor prefactor;           ///< alpha unset for binom until restriction
    VariableChange change;
    std::optional<VariableChange> change_alt;  ///< Equal flag: the other direction
};

/// The generalized-binomial exponent of the equal-rank tautological
/// prefactor: sum of etas minus the restricted node-2 Chern roots, plus the
/// dual rank N_1'.
inline Rat alpha_exponent(const MutatedQuiverSpec& mut, const ChernAssignment& X,
                          const ParamAssignment& params) {
    Rat alpha(0);
    for (const Rat& e : params.etas) alpha += e;
    for (const Rat& x : X.node(2)) alpha -= x;
    alpha += mut.nk_prime;
    return alpha;
}

inline Rat alpha_exponent(const MutatedQuiverSpec& mut, const MutatedFixedPoint& mfp,
                          const ParamAssignment& params) {
    return alpha_exponent(mut, restrict_params(mut.base, mfp, params), params);
}

/// Monomial part shared by every case: q_k' = q_k^{-1} and (when node k+1 is
/// a gauge node) q_{k+1}' = q_{k+1} q_k, identity elsewhere. An am exponent
/// vector n maps to bm exponents beta with beta_k = n_{k+1} - n_k.
inline VariableChange monomial_change(const AnQuiverSpec& spec, long k) {
    std::size_t n = spec.num_gauge();
    VariableChange vc = VariableChange::identity(n);
    std::size_t kk = static_cast<std::size_t>(k - 1);
    vc.M[kk][kk] = -1;
    if (kk + 1 < n) vc.M[kk][kk + 1] = 1;
    return vc;
}

inline DualityCase classify_case(const AnQuiverSpec& spec, long k,
                                 EqualFlagDirection dir = EqualFlagDirection::divide) {
    auto mut = mutate(spec, k);
    auto [nf, na] = nf_na(spec, k);

    DualityCase dc;
    dc.change = monomial_change(spec, k);
    std::size_t n = spec.num_gauge();
    std::size_t kk = static_cast<std::size_t>(k - 1);

    if (nf >= na + 2) {
        dc.tag = CaseTag::GapAtLeast2;
    } else if (nf == na + 1) {
        dc.tag = CaseTag::GapOne;
        dc.prefactor.kind = Prefactor::Kind::exp;
        dc.prefactor.c = Rat(sign_pow(mut.nk_prime));
        dc.prefactor.var = kk;
    } else {
        dc.tag = CaseTag::Equal;
        if (k == 1 && spec.taut_rank > 0) {
            // q_2' = q_1 q_2 / (1 + (-1)^{N_1'} q_1) with the binomial
            // prefactor (1 + (-1)^{N_1'} q_1)^alpha.
            dc.binom_prefactor = true;
            Rat c(sign_pow(mut.nk_prime));
            dc.prefactor.kind = Prefactor::Kind::binom;
            dc.prefactor.c = c;
            dc.prefactor.var = kk;
            if (kk + 1 < n) {
                UnitFactor u;
                u.var = kk;
                u.c = c;
                u.w.assign(n, 0);
                u.w[kk + 1] = -1;
                dc.change.units.push_back(u);
            }
        } else {
            // Equal flag case: q_{k+1}' = q_k q_{k+1}/(1+q_k) and
            // q_{k-1}' = q_{k-1} (1+q_k)^{eps} with eps the direction under test.
            auto with_eps = [&](long eps) {
                VariableChange vc = monomial_change(spec, k);
                UnitFactor u;
                u.var = kk;
                u.c = Rat(1);
                u.w.assign(n, 0);
                if (kk + 1 < n) u.w[kk + 1] = -1;
                if (kk >= 1) u.w[kk - 1] = eps;
                bool nonzero = false;
                for (long x : u.w) nonzero |= (x != 0);
                if (nonzero) vc.units.push_back(u);
                return vc;
            };
            long eps = (dir == EqualFlagDirection::divide) ? -1 : +1;
            dc.change = with_eps(eps);
            dc.change_alt = with_eps(-eps);
        }
    }
    return dc;
}

inline VariableChange build_variable_change(const DualityCase& dc, const AnQuiverSpec& spec,
                                            long k) {
    (void)spec;
    (void)k;
    return dc.change;
}

/// Completeness facts for the am-side series in its enumeration box: the
/// lower box edge at node k is a truncation (deeper Laurent orders exist),
/// the upper edges at nodes != k are truncations, and the node-k exponent is
/// bounded by nk_prime times the node-(k+1) exponent (0 at the frame).
inline SupportInfo am_support_info(const MutatedQuiverSpec& mut) {
    std::size_t n = mut.base.num_gauge();
    SupportInfo sup = SupportInfo::exact(n);
    std::size_t kk = static_cast<std::size_t>(mut.k - 1);
    for (std::size_t v = 0; v < n; ++v) sup.hi_trunc[v] = true;
    sup.lo_trunc[kk] = true;
    sup.k = mut.k;
    sup.nk_prime = mut.nk_prime;
    sup.kplus = (kk + 1 < n) ? mut.k + 1 : 0;
    return sup;
}

struct Mismatch {
    MultiIndex monomial;
    Rat lhs;
    Rat rhs;
};

struct PairResult {
    std::string fp_id;
    std::string mfp_id;
    std::vector<MultiIndex> window;  ///< sorted, provably complete target monomials
    std::vector<Mismatch> mismatches;
    bool pass = false;
};

struct VerificationReport {
    CaseTag tag = CaseTag::GapAtLeast2;
    bool tautological = false;
    unsigned long seed = 0;
    long k = 0;
    std::vector<long> caps;
    std::vector<PairResult> pairs;
    bool verdict = false;

    // Equal flag case only: outcome of each candidate direction.
    bool dual_direction_run = false;
    bool pass_divide = false;
    bool pass_multiply = false;
    EqualFlagDirection direction_used = EqualFlagDirection::divide;
};

struct FixedPointSelector {
    enum class Mode { automatic, all, sample } mode = Mode::automatic;
    std::size_t sample_size = 5;
    std::optional<std::string> only_id;  ///< restrict to one fixed point by id
};

namespace detail {

inline std::size_t worker_count() {
    if (const char* env = std::getenv("QUIVERIQ_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<std::size_t>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

inline std::vector<FixedPointChain> select_fixed_points(const AnQuiverSpec& spec,
                                                        unsigned long seed,
                                                        const FixedPointSelector& sel) {
    auto all = enumerate_fixed_points(spec);
    if (sel.only_id) {
        std::vector<FixedPointChain> out;
        for (const auto& fp : all)
            if (fixed_point_id(fp) == *sel.only_id) out.push_back(fp);
        if (out.empty()) throw ConfigError("unknown fixed point id: " + *sel.only_id);
        return out;
    }
    bool sample = sel.mode == FixedPointSelector::Mode::sample ||
                  (sel.mode == FixedPointSelector::Mode::automatic && all.size() > 30);
    if (!sample || all.size() <= sel.sample_size) return all;
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(sel.sample_size);
    std::sort(all.begin(), all.end());
    return all;
}

/// Verifies one matched fixed-point pair for one concrete variable change.
inline PairResult verify_one(const AnQuiverSpec& spec, const MutatedQuiverSpec& mut,
                             const FixedPointChain& fp, const ParamAssignment& params,
                             const std::vector<long>& caps, const VariableChange& vc,
                             Prefactor pre, bool binom_prefactor, bool negate_prefactor) {
    PairResult pr;
    pr.fp_id = fixed_point_id(fp);
    auto X = restrict_params(spec, fp, params);
    bool taut = spec.taut_rank > 0;
    LaurentSeries lhs = taut ? i_bm_tautf(spec, X, params, caps) : i_bm_flag(spec, X, caps);

    auto mfp = iota(spec, fp, mut.k);
    pr.mfp_id = fixed_point_id(mfp);
    auto Xa = restrict_params(spec, mfp, params);
    LaurentSeries am = !taut          ? i_am_flag(mut, Xa, caps)
                       : mut.k == 1   ? i_am_tautf_1(mut, Xa, params, caps)
                                      : i_am_tautf_k(mut, Xa, params, caps);

    if (binom_prefactor) pre.alpha = alpha_exponent(mut, Xa, params);
    if (negate_prefactor) {
        if (pre.kind == Prefactor::Kind::none) {
            pre.kind = Prefactor::Kind::exp;
            pre.c = Rat(1);
            pre.var = static_cast<std::size_t>(mut.k - 1);
        } else {
            pre.c = -pre.c;
        }
    }

    Box target(spec.num_gauge());
    for (std::size_t v = 0; v < target.size(); ++v) target[v].hi = caps[v];
    SupportInfo sup = am_support_info(mut);
    bool pre_tail = pre.kind != Prefactor::Kind::none;
    auto window = reliable_window(am.box(), vc, target, sup, pre_tail,
                                  static_cast<std::size_t>(mut.k - 1));
    LaurentSeries rhs = apply_variable_change(am, vc, target, pre, &sup,
                                              /*require_complete=*/false);
    for (const auto& beta : window) {
        Rat l = lhs.coeff(beta);
        Rat r = rhs.coeff(beta);
        if (l != r) pr.mismatches.push_back({beta, l, r});
    }
    pr.window.assign(window.begin(), window.end());
    pr.pass = pr.mismatches.empty() && !pr.window.empty();
    return pr;
}

inline std::vector<PairResult> verify_all_pairs(const AnQuiverSpec& spec,
                                                const MutatedQuiverSpec& mut,
                                                const std::vector<FixedPointChain>& fps,
                                                const ParamAssignment& params,
                                                const std::vector<long>& caps,
                                                const VariableChange& vc, const Prefactor& pre,
                                                bool binom_prefactor, bool negate_prefactor) {
    std::vector<PairResult> out(fps.size());
    std::size_t workers = std::min(worker_count(), fps.size() ? fps.size() : 1);
    if (workers <= 1) {
        for (std::size_t i = 0; i < fps.size(); ++i)
            out[i] = verify_one(spec, mut, fps[i], params, caps, vc, pre, binom_prefactor,
                                negate_prefactor);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < fps.size(); i = next.fetch_add(1))
                out[i] = verify_one(spec, mut, fps[i], params, caps, vc, pre, binom_prefactor,
                                    negate_prefactor);
        });
    for (auto& t : pool) t.join();
    return out;
}

}  // namespace detail

/// Runs the full duality verification at one seed: classify the case, build
/// the change(s), compare both sides at every selected fixed-point pair on
/// the provably complete window. In the Equal flag case both candidate
/// q_{k-1}' directions are run; the verdict follows `dir`, and the report
/// carries both outcomes.
inline VerificationReport verify_pair(const AnQuiverSpec& spec, long k,
                                      const std::vector<long>& caps, unsigned long seed,
                                      const FixedPointSelector& sel = {},
                                      EqualFlagDirection dir = EqualFlagDirection::divide,
                                      bool negative_control = false) {
    spec.validate();
    if (caps.size() != spec.num_gauge()) throw ConfigError("caps must list one bound per node");
    for (long c : caps)
        if (c < 0) throw ConfigError("caps must be >= 0");
    auto mut = mutate(spec, k);
    long max_cap = 0;
    for (long c : caps) max_cap = std::max(max_cap, c);
    auto params = sample_params(spec, seed, std::max(max_cap, 8L));
    auto dc = classify_case(spec, k, dir);
    auto fps = detail::select_fixed_points(spec, seed, sel);

    VerificationReport rep;
    rep.tag = dc.tag;
    rep.tautological = spec.taut_rank > 0;
    rep.seed = seed;
    rep.k = k;
    rep.caps = caps;
    rep.direction_used = dir;

    rep.pairs = detail::verify_all_pairs(spec, mut, fps, params, caps, dc.change, dc.prefactor,
                                         dc.binom_prefactor, negative_control);
    bool primary_pass = !rep.pairs.empty();
    for (const auto& pr : rep.pairs) primary_pass &= pr.pass;
    rep.verdict = primary_pass;

    if (dc.change_alt) {
        rep.dual_direction_run = true;
        auto alt = detail::verify_all_pairs(spec, mut, fps, params, caps, *dc.change_alt,
                                            dc.prefactor, dc.binom_prefactor, negative_control);
        bool alt_pass = !alt.empty();
        for (const auto& pr : alt) alt_pass &= pr.pass;
        if (dir == EqualFlagDirection::divide) {
            rep.pass_divide = primary_pass;
            rep.pass_multiply = alt_pass;
        } else {
            rep.pass_multiply = primary_pass;
            rep.pass_divide = alt_pass;
        }
    }
    return rep;
}

}  // namespace quiveriq
