#include <doctest.h>

#include <sstream>

#include "clmatch/graph.hpp"

using namespace clmatch;

namespace {

BipartiteGraph k22() { return BipartiteGraph(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}); }

// Path on 2+2 vertices: (0,0), (1,0), (1,1).
BipartiteGraph path22() { return BipartiteGraph(2, {{0, 0}, {1, 0}, {1, 1}}); }

} // namespace

TEST_CASE("graph construction canonicalizes edge order") {
    BipartiteGraph g(2, {{1, 1}, {0, 0}, {1, 0}, {0, 1}});
    CHECK(g.n() == 2);
    CHECK(g.m() == 4);
    CHECK(g.edge(0) == Edge{0, 0});
    CHECK(g.edge(1) == Edge{0, 1});
    CHECK(g.edge(2) == Edge{1, 0});
    CHECK(g.edge(3) == Edge{1, 1});
    CHECK(g.edge_id(1, 0) == 2);
    CHECK_FALSE(g.edge_id(1, 2).has_value());
}

TEST_CASE("graph construction rejects bad input") {
    CHECK_THROWS_AS(BipartiteGraph(0, {}), InputError);
    CHECK_THROWS_AS(BipartiteGraph(17, {}), InputError);
    CHECK_THROWS_AS(BipartiteGraph(2, {{0, 2}}), InputError);
    CHECK_THROWS_AS(BipartiteGraph(2, {{0, 0}, {0, 0}}), InputError);
}

TEST_CASE("without_edge renumbers canonically") {
    BipartiteGraph g = k22();
    BipartiteGraph h = g.without_edge(1);
    CHECK(h.m() == 3);
    CHECK(h.edge(0) == Edge{0, 0});
    CHECK(h.edge(1) == Edge{1, 0});
    CHECK(h.edge(2) == Edge{1, 1});
}

TEST_CASE("validate_matching") {
    BipartiteGraph g = k22();
    CHECK(validate_matching(g, {0, 3}));       // (0,0),(1,1): disjoint
    CHECK_FALSE(validate_matching(g, {0, 1})); // (0,0),(0,1): shared left vertex
    CHECK(validate_matching(g, {}));
    CHECK_FALSE(validate_matching(g, {4}));    // out of range
    CHECK_FALSE(validate_matching(g, {3, 0})); // unsorted
}

TEST_CASE("symmetric_difference") {
    Matching m1 = {0, 3};
    Matching m2 = {1, 3};
    CHECK(symmetric_difference(m1, m1) == EdgeSet{});
    CHECK(symmetric_difference({0}, {3}) == EdgeSet{0, 3});
    CHECK(symmetric_difference(m1, m2) == EdgeSet{0, 1});
    // |M1 symdiff M2| = |M1| + |M2| - 2|M1 cap M2|
    CHECK(symmetric_difference(m1, m2).size() == m1.size() + m2.size() - 2 * 1);
}

TEST_CASE("xor_apply identities") {
    Matching m = {0, 3};
    CHECK(xor_apply(m, {}) == m);
    CHECK(xor_apply(m, m) == EdgeSet{});
    EdgeSet s = {1, 3};
    CHECK(xor_apply(xor_apply(m, s), s) == m);
}

TEST_CASE("xor_apply augments a matching along an augmenting path") {
    BipartiteGraph g = path22();
    Matching m = {1};           // (1,0)
    EdgeSet p = {0, 1, 2};      // (0,0),(1,0),(1,1): augmenting for m
    Matching bigger = xor_apply(m, p);
    CHECK(bigger == Matching{0, 2});
    CHECK(validate_matching(g, bigger));
    CHECK(bigger.size() == m.size() + 1);
}

TEST_CASE("classify_components") {
    BipartiteGraph g = k22();

    SUBCASE("empty difference") {
        CHECK(classify_components(g, {}, {0}, {0}).empty());
    }
    SUBCASE("two edges sharing a left vertex form an even alternating path") {
        auto comps = classify_components(g, {0, 1}, {0}, {1});
        REQUIRE(comps.size() == 1);
        CHECK(comps[0].kind == ComponentKind::EvenAlternatingPath);
        CHECK(comps[0].edges.size() == 2);
    }
    SUBCASE("single unmatched edge is augmenting for the empty matching") {
        auto comps = classify_components(g, {0}, {}, {0});
        REQUIRE(comps.size() == 1);
        CHECK(comps[0].kind == ComponentKind::AugmentingWrtM1);
    }
    SUBCASE("two disjoint perfect matchings form an even alternating cycle") {
        auto comps = classify_components(g, {0, 1, 2, 3}, {0, 3}, {1, 2});
        REQUIRE(comps.size() == 1);
        CHECK(comps[0].kind == ComponentKind::EvenAlternatingCycle);
        CHECK(comps[0].edges.size() == 4);
    }
    SUBCASE("bad inputs are rejected") {
        CHECK_THROWS_AS(classify_components(g, {0, 1}, {0, 1}, {}), InputError);
        CHECK_THROWS_AS(classify_components(g, {0}, {0}, {1}), InputError);
    }
}

TEST_CASE("classify_components alternation invariant on random pairs") {
    // Degree <= 2 in H and alternation hold for every matching pair; the
    // classifier throws if either fails, so classifying is itself the check.
    for (int mask1 = 0; mask1 < 16; ++mask1)
        for (int mask2 = 0; mask2 < 16; ++mask2) {
            BipartiteGraph g = k22();
            Matching m1, m2;
            for (int i = 0; i < 4; ++i) {
                if (mask1 & (1 << i)) m1.push_back(i);
                if (mask2 & (1 << i)) m2.push_back(i);
            }
            if (!validate_matching(g, m1) || !validate_matching(g, m2)) continue;
            auto comps = classify_components(g, symmetric_difference(m1, m2), m1, m2);
            std::size_t total = 0;
            for (const auto& c : comps) total += c.edges.size();
            CHECK(total == symmetric_difference(m1, m2).size());
        }
}

TEST_CASE("read_graph parses the text format") {
    std::istringstream in("2 3\n1 1\n0 0\n1 0\n");
    BipartiteGraph g = read_graph(in);
    CHECK(g.n() == 2);
    CHECK(g.m() == 3);
    CHECK(g.edge(0) == Edge{0, 0});
    CHECK(format_graph(g) == "2 3\n0 0\n1 0\n1 1\n");
}

TEST_CASE("read_graph rejects malformed input") {
    auto parse = [](const std::string& s) {
        std::istringstream in(s);
        return read_graph(in);
    };
    CHECK_THROWS_AS(parse(""), InputError);
    CHECK_THROWS_AS(parse("2 -1\n"), InputError);
    CHECK_THROWS_AS(parse("2 2\n0 0\n"), InputError);          // short edge list
    CHECK_THROWS_AS(parse("2 2\n0 0\n0 0\n"), InputError);     // duplicate
    CHECK_THROWS_AS(parse("2 1\n0 2\n"), InputError);          // out of range
    CHECK_THROWS_AS(parse("2 1\n0 0\nstray"), InputError);     // trailing junk
}

TEST_CASE("validate_weights and matching_weight") {
    BipartiteGraph g = k22();
    WeightAssignment w{{1, 2, 3, 5}, 4};
    validate_weights(g, w);
    CHECK(matching_weight({1, 2}, w.w) == 5);
    CHECK(matching_weight({}, w.w) == 0);
    WeightAssignment bad{{1, 2, 3}, 4};
    CHECK_THROWS_AS(validate_weights(g, bad), InputError);
    WeightAssignment big{{1, 2, 3, 16}, 4};
    CHECK_THROWS_AS(validate_weights(g, big), InputError);
}
