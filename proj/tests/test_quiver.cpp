#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "quiveriq/quiver.hpp"

using namespace quiveriq;

TEST_CASE("neighbor ranks along the chain") {
    AnQuiverSpec spec{{1, 2}, 3, 0};
    CHECK(nf_na(spec, 2) == std::pair<long, long>(3, 1));
    CHECK(nf_na(spec, 1) == std::pair<long, long>(2, 0));
    AnQuiverSpec taut{{1, 2}, 3, 1};
    CHECK(nf_na(taut, 1) == std::pair<long, long>(2, 1));
    CHECK_THROWS_AS(nf_na(spec, 0), ConfigError);
    CHECK_THROWS_AS(nf_na(spec, 3), ConfigError);
}

TEST_CASE("mutation rank arithmetic") {
    CHECK(mutate(AnQuiverSpec{{1, 2}, 3, 0}, 1).nk_prime == 1);
    CHECK(mutate(AnQuiverSpec{{1, 2}, 3, 0}, 2).nk_prime == 1);
    // Equal neighbor ranks give a rank-0 mutated node.
    CHECK(mutate(AnQuiverSpec{{2, 2}, 2, 0}, 2).nk_prime == 0);
    // N_k + N_k' = max(N_f, N_a) exactly.
    for (long k : {1L, 2L}) {
        AnQuiverSpec spec{{2, 3}, 4, 1};
        auto [nf, na] = nf_na(spec, k);
        auto mut = mutate(spec, k);
        CHECK(mut.nk_prime + spec.rank(k) == std::max(nf, na));
    }
}

TEST_CASE("mutated spec reports replaced rank only at node k") {
    auto mut = mutate(AnQuiverSpec{{1, 2}, 3, 0}, 1);
    CHECK(mut.rank(1) == 1);  // N_1' = max(2,0)-1
    CHECK(mut.rank(2) == 2);
    CHECK(mut.rank(3) == 3);
}

TEST_CASE("spec validation rejects bad rank chains") {
    CHECK_THROWS_AS(AnQuiverSpec({}, 3, 0).validate(), ConfigError);
    CHECK_THROWS_AS(AnQuiverSpec({2, 1}, 3, 0).validate(), ConfigError);  // decreasing
    CHECK_THROWS_AS(AnQuiverSpec({1, 2}, 1, 0).validate(), ConfigError);  // frame too small
    CHECK_THROWS_AS(AnQuiverSpec({1, 2}, 3, -1).validate(), ConfigError);
    CHECK_THROWS_AS(AnQuiverSpec({1}, 2, 3).validate(), ConfigError);  // N0 > N2
    CHECK_NOTHROW(AnQuiverSpec({2, 2}, 2, 0).validate());  // equal consecutive ranks allowed
    CHECK_NOTHROW(AnQuiverSpec({1, 2}, 2, 2).validate());
}

TEST_CASE("rank indexing treats node D as the frame") {
    AnQuiverSpec spec{{1, 2}, 3, 0};
    CHECK(spec.rank(1) == 1);
    CHECK(spec.rank(2) == 2);
    CHECK(spec.rank(3) == 3);
    CHECK(spec.rank_after_one() == 2);
    AnQuiverSpec single{{1}, 2, 2};
    CHECK(single.rank_after_one() == 2);  // the frame when D = 2
}
