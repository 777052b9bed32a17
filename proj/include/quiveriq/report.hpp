#pragma once

/// \file report.hpp
/// \brief JSON serialization of configs, series tables and verification
///        reports. All rationals render as "p/q" strings and monomials as
///        "q1^a1*q2^a2"; object keys are sorted, so serialized output is
///        stable for golden-file diffing.

#include "quiveriq/appendix.hpp"
#include "quiveriq/duality.hpp"

#include <json.hpp>

namespace quiveriq {

using json = nlohmann::json;

inline constexpr const char* kToolVersion = "quiveriq 1.0.0";

inline json quiver_to_json(const AnQuiverSpec& spec) {
    return json{{"gauge_ranks", spec.gauge_ranks},
                {"frame_rank", spec.frame_rank},
                {"taut_rank", spec.taut_rank}};
}

inline AnQuiverSpec quiver_from_json(const json& j) {
    AnQuiverSpec spec;
    spec.gauge_ranks = j.at("gauge_ranks").get<std::vector<long>>();
    spec.frame_rank = j.at("frame_rank").get<long>();
    spec.taut_rank = j.value("taut_rank", 0L);
    return spec;
}

inline json params_to_json(const ParamAssignment& p) {
    json lam = json::array(), eta = json::array();
    for (const auto& v : p.lambdas) lam.push_back(rat_to_string(v));
    for (const auto& v : p.etas) eta.push_back(rat_to_string(v));
    return json{{"lambdas", lam}, {"etas", eta}, {"seed", p.seed}};
}

/// Series as a sorted monomial -> "p/q" table (the zero coefficients inside
/// the box are omitted; the box is recorded separately).
inline json series_to_json(const LaurentSeries& s) {
    json table = json::object();
    for (const auto& [idx, c] : s.coeffs()) table[monomial_to_string(idx)] = rat_to_string(c);
    json box = json::array();
    for (const auto& b : s.box())
        box.push_back(json{{"lo", b.lo}, {"hi", b.hi >= kUnbounded ? json() : json(b.hi)}});
    return json{{"box", box}, {"coefficients", table}};
}

inline json pair_result_to_json(const PairResult& pr) {
    json mis = json::array();
    for (const auto& m : pr.mismatches)
        mis.push_back(json{{"monomial", monomial_to_string(m.monomial)},
                           {"lhs", rat_to_string(m.lhs)},
                           {"rhs", rat_to_string(m.rhs)}});
    json window = json::array();
    for (const auto& b : pr.window) window.push_back(monomial_to_string(b));
    return json{{"fixed_point", pr.fp_id},
                {"mutated_fixed_point", pr.mfp_id},
                {"window", window},
                {"window_size", pr.window.size()},
                {"mismatches", mis},
                {"pass", pr.pass}};
}

inline json report_to_json(const VerificationReport& r) {
    json pairs = json::array();
    for (const auto& pr : r.pairs) pairs.push_back(pair_result_to_json(pr));
    json j{{"case", case_tag_name(r.tag)},
           {"tautological", r.tautological},
           {"mutation_node", r.k},
           {"caps", r.caps},
           {"seed", r.seed},
           {"pairs", pairs},
           {"verdict", r.verdict ? "pass" : "fail"}};
    if (r.dual_direction_run) {
        j["equal_flag_directions"] = json{
            {"divide", r.pass_divide ? "pass" : "fail"},
            {"multiply", r.pass_multiply ? "pass" : "fail"},
            {"used", direction_name(r.direction_used)}};
    }
    return j;
}

inline json residue_to_json(const ResidueCheck& rc) {
    json terms = json::array();
    for (const auto& t : rc.terms)
        terms.push_back(json{{"pole", rat_to_string(t.pole)},
                             {"residue", rat_to_string(t.residue)},
                             {"half_plane", t.left ? "left" : "right"}});
    std::string outcome = rc.outcome == ResidueOutcome::Pass        ? "pass"
                          : rc.outcome == ResidueOutcome::Fail      ? "fail"
                                                                    : "not_applicable";
    json j{{"outcome", outcome}, {"terms", terms}};
    if (rc.outcome != ResidueOutcome::NotApplicable) {
        j["sum_right"] = rat_to_string(rc.sum_right);
        j["sum_left"] = rat_to_string(rc.sum_left);
        j["i_bm_1"] = rat_to_string(rc.i_bm_1);
        j["i_am_1"] = rat_to_string(rc.i_am_1);
    }
    return j;
}

}  // namespace quiveriq
