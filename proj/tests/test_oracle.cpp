#include <doctest.h>

#include <cstdint>
#include <vector>

#include "clmatch/generate.hpp"
#include "clmatch/graph.hpp"
#include "clmatch/hopcroft_karp.hpp"
#include "clmatch/oracle.hpp"
#include "clmatch/util.hpp"

using namespace clmatch;

namespace {

BipartiteGraph k22() { return BipartiteGraph(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}); }

BipartiteGraph complete(int n) {
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) edges.push_back({u, v});
    return BipartiteGraph(n, edges);
}

} // namespace

TEST_CASE("brute force counts on small complete graphs") {
    auto rep = oracle::brute_force_matchings(k22(), {0, 0, 0, 0});
    CHECK(rep.max_size == 2);
    CHECK(rep.by_size[0].matching_count == 1);
    CHECK(rep.by_size[1].matching_count == 4);
    CHECK(rep.by_size[2].matching_count == 2);

    auto rep3 = oracle::brute_force_matchings(complete(3), std::vector<std::int64_t>(9, 0));
    CHECK(rep3.max_size == 3);
    CHECK(rep3.by_size[3].matching_count == 6);

    auto repe = oracle::brute_force_matchings(BipartiteGraph(2, {}), {});
    CHECK(repe.max_size == 0);
    CHECK(repe.by_size[1].matching_count == 0);
    CHECK_FALSE(repe.by_size[1].min_weight.has_value());
}

TEST_CASE("brute force weight statistics and isolation verdicts") {
    auto rep = oracle::brute_force_matchings(k22(), {1, 2, 3, 5});
    // Size 1: the four single edges, min weight 1 via (0,0).
    CHECK(rep.by_size[1].min_weight == 1);
    CHECK(rep.by_size[1].min_count == 1);
    CHECK(rep.by_size[1].isolated);
    CHECK(rep.by_size[1].min_matchings[0] == Matching{0});
    // Size 2: 1+5=6 vs 2+3=5.
    CHECK(rep.by_size[2].min_weight == 5);
    CHECK(rep.by_size[2].isolated);
    CHECK(rep.by_size[2].min_matchings[0] == Matching{1, 2});

    auto tied = oracle::brute_force_matchings(k22(), {1, 1, 1, 1});
    CHECK(tied.by_size[1].min_count == 4);
    CHECK_FALSE(tied.by_size[1].isolated);
    CHECK(tied.by_size[2].min_count == 2);

    CHECK(oracle::is_isolating(k22(), 2, {1, 2, 3, 5}));
    CHECK_FALSE(oracle::is_isolating(k22(), 1, {1, 1, 1, 1}));
    // No size-k matching at all: vacuously not isolating.
    CHECK_FALSE(oracle::is_isolating(BipartiteGraph(2, {{0, 0}}), 2, {7}));

    CHECK(oracle::unique_min_matching(k22(), 2, {1, 2, 3, 5}) == Matching{1, 2});
    CHECK_FALSE(oracle::unique_min_matching(k22(), 1, {1, 1, 1, 1}).has_value());
}

TEST_CASE("keep_all stores the full enumeration") {
    auto rep = oracle::brute_force_matchings(k22(), {0, 0, 0, 0}, true);
    CHECK(rep.all_matchings.size() == 1 + 4 + 2);
    for (const auto& m : rep.all_matchings) CHECK(validate_matching(k22(), m));
}

TEST_CASE("brute force refuses oversized instances") {
    CHECK_THROWS_AS(oracle::brute_force_matchings(BipartiteGraph(9, {}), {}), InputError);
}

TEST_CASE("min_weight_max_matching_exhaustive") {
    auto [wt, m] = oracle::min_weight_max_matching_exhaustive(k22(), {1, 2, 3, 5});
    CHECK(wt == 5);
    CHECK(m == Matching{1, 2});

    auto [wt2, m2] = oracle::min_weight_max_matching_exhaustive(BipartiteGraph(2, {}), {});
    CHECK(wt2 == 0);
    CHECK(m2.empty());
}

TEST_CASE("hopcroft_karp agrees with the oracle") {
    CHECK(hopcroft_karp(k22()).size() == 2);
    BipartiteGraph path(2, {{0, 0}, {1, 0}, {1, 1}});
    CHECK(hopcroft_karp(path).size() == 2);
    BipartiteGraph star(3, {{0, 0}, {0, 1}, {0, 2}});
    CHECK(hopcroft_karp(star).size() == 1);

    for (int i = 0; i < 1000; ++i) {
        std::uint64_t state = mix_seed(0x9a7c0u, i);
        int n = 1 + static_cast<int>(splitmix64(state) % 6);
        std::vector<Edge> edges;
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (splitmix64(state) & 1) edges.push_back({u, v});
        BipartiteGraph g(n, edges);
        Matching m = hopcroft_karp(g);
        CHECK(validate_matching(g, m));
        CHECK(static_cast<int>(m.size()) == oracle::max_matching_size(g));
    }
}
