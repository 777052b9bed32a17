#pragma once

/// \file quiver.hpp
/// \brief A_n quiver specifications and mutation rank bookkeeping.

#include <stdexcept>
#include <string>
#include <vector>

namespace quiveriq {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct NegativeRankError : std::runtime_error {
    explicit NegativeRankError(const std::string& what) : std::runtime_error(what) {}
};

/// A linear chain of gauge nodes N_1 <= ... <= N_{D-1} with one frame node
/// N_D, and optionally N_0 copies of the tautological bundle S_1 feeding
/// gauge node 1 (taut_rank == 0 means the plain flag variety).
struct AnQuiverSpec {
    std::vector<long> gauge_ranks;  ///< N_1..N_{D-1}
    long frame_rank = 0;            ///< N_D
    long taut_rank = 0;             ///< N_0 (>= 0)

    /// Number of gauge nodes D-1 (also the number of Kaehler variables).
    std::size_t num_gauge() const { return gauge_ranks.size(); }

    /// Rank of node i with 1-based chain indexing; node D is the frame.
    long rank(long i) const {
        if (i == static_cast<long>(num_gauge()) + 1) return frame_rank;
        return gauge_ranks.at(static_cast<std::size_t>(i - 1));
    }

    void validate() const {
        if (gauge_ranks.empty()) throw ConfigError("quiver needs at least one gauge node");
        long prev = 0;
        for (long r : gauge_ranks) {
            if (r <= 0) throw ConfigError("gauge ranks must be positive");
            if (r < prev) throw ConfigError("ranks must satisfy N1 <= ... <= ND (nondecreasing)");
            prev = r;
        }
        if (frame_rank < prev)
            throw ConfigError("ranks must satisfy N1 <= ... <= ND (frame below last gauge rank)");
        if (taut_rank < 0) throw ConfigError("taut_rank must be >= 0");
        if (taut_rank > 0 && taut_rank > rank_after_one())
            throw ConfigError("tautological geometry requires N0 <= N2");
    }

    /// N_2 in the tautological sense: the rank of the node after node 1
    /// (the frame when there is a single gauge node).
    long rank_after_one() const { return rank(2); }
};

/// Neighbor ranks of node k in the A_n chain: N_f(k) = N_{k+1} (the frame for
/// k = D-1) and N_a(k) = N_{k-1}, with N_a(1) = N_0 (0 for a plain flag).
inline std::pair<long, long> nf_na(const AnQuiverSpec& spec, long k) {
    if (k < 1 || k > static_cast<long>(spec.num_gauge()))
        throw ConfigError("mutation node out of range");
    long nf = spec.rank(k + 1);
    long na = (k >= 2) ? spec.rank(k - 1) : spec.taut_rank;
    return {nf, na};
}

/// The A_n quiver mutated at gauge node k: same chain with rank N_k replaced
/// by N_k' = max(N_f(k), N_a(k)) - N_k and the incident arrows rewired.
struct MutatedQuiverSpec {
    AnQuiverSpec base;
    long k = 0;         ///< mutated gauge node, 1-based
    long nk_prime = 0;  ///< N_k'

    /// Rank of node i in the mutated quiver.
    long rank(long i) const { return i == k ? nk_prime : base.rank(i); }
};

inline MutatedQuiverSpec mutate(const AnQuiverSpec& spec, long k) {
    spec.validate();
    auto [nf, na] = nf_na(spec, k);
    long nk = spec.rank(k);
    long m = std::max(nf, na);
    if (m < nk) throw NegativeRankError("mutation would produce a negative rank");
    return MutatedQuiverSpec{spec, k, m - nk};
}

}  // namespace quiveriq
