#pragma once

/// \file effective.hpp
/// \brief Enumeration of effective quasimap classes for the flag quiver and
///        its mutation (the index sets Eff_flag and Eff_dflag).

#include "quiveriq/quiver.hpp"

#include <algorithm>
#include <functional>
#include <vector>

namespace quiveriq {

/// Per-node degree vectors m^{(i)} (node k of a mutated quiver has length
/// N_k' and entries in Z; all other entries are >= 0).
using DegreeVector = std::vector<std::vector<long>>;

/// Truncation bookkeeping for the enumerators: caps on the per-node total
/// degree |m^{(i)}|, plus a signed entry/sum window for the mutated node.
struct EffBox {
    std::vector<long> caps;  ///< per gauge node cap on |m^{(i)}| (ignored at node k)
    long k = 0;              ///< mutated node (0 for the unmutated quiver)
    long entry_lo = 0;       ///< per-entry window for node-k entries
    long entry_hi = 0;
    long sum_lo = 0;         ///< window on the node-k total degree |n^{(k)}|
    long sum_hi = 0;
};

namespace detail {

/// Feasibility of an injection I -> J_I with a[I] >= b[J_I] (a system of
/// distinct representatives): holds iff the sorted a's dominate the sorted
/// |a| smallest b's elementwise.
inline bool threshold_matching(std::vector<long> a, std::vector<long> b) {
    if (a.size() > b.size()) return false;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] < b[i]) return false;
    return true;
}

/// All vectors of length n with entries in [lo, hi] and sum in [slo, shi].
inline void enumerate_vectors(std::size_t n, long lo, long hi, long slo, long shi,
                              const std::function<void(const std::vector<long>&)>& fn) {
    std::vector<long> cur(n, 0);
    auto rec = [&](auto&& self, std::size_t pos, long sum) -> void {
        if (pos == n) {
            if (sum >= slo && sum <= shi) fn(cur);
            return;
        }
        long rest = static_cast<long>(n - pos - 1);
        for (long v = lo; v <= hi; ++v) {
            // Prune: remaining entries can still reach the sum window.
            if (sum + v + rest * lo > shi) break;
            if (sum + v + rest * hi < slo) continue;
            cur[pos] = v;
            self(self, pos + 1, sum + v);
        }
        cur[pos] = 0;
    };
    rec(rec, 0, 0);
}

}  // namespace detail

/// Effectivity test for a nonnegative degree vector of the flag quiver: each
/// node admits an injective choice of a weakly smaller entry in the next node
/// up (the frame contributing zeros).
inline bool eff_flag_member(const AnQuiverSpec& spec, const DegreeVector& m) {
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (long v : m[i])
            if (v < 0) return false;
        std::vector<long> next =
            (i + 1 < m.size()) ? m[i + 1]
                               : std::vector<long>(static_cast<std::size_t>(spec.frame_rank), 0);
        if (!detail::threshold_matching(m[i], next)) return false;
    }
    return true;
}

/// Effectivity test for a degree vector of the quiver mutated at k: nodes
/// other than k behave as in the unmutated case (node k-1 matching against
/// node k+1, which the new arrow targets), while node-k entries may be
/// negative and must each be dominated by a distinct node-(k+1) entry.
inline bool eff_dflag_member(const MutatedQuiverSpec& mut, const DegreeVector& n) {
    long D1 = static_cast<long>(mut.base.num_gauge());
    auto node_or_frame = [&](long i) -> std::vector<long> {
        if (i == D1 + 1)
            return std::vector<long>(static_cast<std::size_t>(mut.base.frame_rank), 0);
        return n[static_cast<std::size_t>(i - 1)];
    };
    for (long i = 1; i <= D1; ++i) {
        const auto& ni = n[static_cast<std::size_t>(i - 1)];
        if (i == mut.k) {
            // Reversed matching: each n^{(k)}_I needs a distinct dominating
            // entry in node k+1 (negate both sides to reuse the helper).
            std::vector<long> neg_i, neg_up;
            for (long v : ni) neg_i.push_back(-v);
            for (long v : node_or_frame(i + 1)) neg_up.push_back(-v);
            if (!detail::threshold_matching(neg_i, neg_up)) return false;
            continue;
        }
        for (long v : ni)
            if (v < 0) return false;
        long up = (i == mut.k - 1) ? i + 2 : i + 1;  // node k-1 skips over node k
        if (!detail::threshold_matching(ni, node_or_frame(up))) return false;
    }
    return true;
}

/// Streams all effective classes of the unmutated quiver inside the box.
/// With apply_conditions=false the effectivity matching filter is skipped
/// (superset enumeration for the structural-zero property).
inline void eff_flag_enumerate(const AnQuiverSpec& spec, const EffBox& box,
                               bool apply_conditions,
                               const std::function<void(const DegreeVector&)>& fn) {
    std::size_t nnodes = spec.num_gauge();
    DegreeVector cur(nnodes);
    auto rec = [&](auto&& self, std::size_t node) -> void {
        if (node == nnodes) {
            if (!apply_conditions || eff_flag_member(spec, cur)) fn(cur);
            return;
        }
        long cap = box.caps.at(node);
        detail::enumerate_vectors(
            static_cast<std::size_t>(spec.rank(static_cast<long>(node) + 1)), 0, cap, 0, cap,
            [&](const std::vector<long>& v) {
                cur[node] = v;
                self(self, node + 1);
            });
    };
    rec(rec, 0);
}

/// Streams all effective classes of the mutated quiver inside the box
/// (node-k entries drawn from the signed window).
inline void eff_dflag_enumerate(const MutatedQuiverSpec& mut, const EffBox& box,
                                bool apply_conditions,
                                const std::function<void(const DegreeVector&)>& fn) {
    std::size_t nnodes = mut.base.num_gauge();
    DegreeVector cur(nnodes);
    auto rec = [&](auto&& self, std::size_t node) -> void {
        if (node == nnodes) {
            if (!apply_conditions || eff_dflag_member(mut, cur)) fn(cur);
            return;
        }
        long i = static_cast<long>(node) + 1;
        long len = mut.rank(i);
        long lo = 0, hi = box.caps.at(node), slo = 0, shi = box.caps.at(node);
        if (i == mut.k) {
            lo = box.entry_lo;
            hi = box.entry_hi;
            slo = box.sum_lo;
            shi = box.sum_hi;
        }
        detail::enumerate_vectors(static_cast<std::size_t>(len), lo, hi, slo, shi,
                                  [&](const std::vector<long>& v) {
                                      cur[node] = v;
                                      self(self, node + 1);
                                  });
    };
    rec(rec, 0);
}

}  // namespace quiveriq
