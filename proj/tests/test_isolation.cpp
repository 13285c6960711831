#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <vector>

#include "clmatch/generate.hpp"
#include "clmatch/isolation.hpp"
#include "clmatch/oracle.hpp"
#include "clmatch/util.hpp"

using namespace clmatch;

namespace {

BipartiteGraph k22() { return BipartiteGraph(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}); }

const std::vector<std::int64_t> kW1235 = {1, 2, 3, 5};

} // namespace

TEST_CASE("extend_to_perfect with k = n is the identity up to scaling") {
    BipartiteGraph g = k22();
    ExtendedGraph ext = extend_to_perfect(g, 2, kW1235);
    CHECK(ext.graph == g);
    CHECK(ext.scale >= 1);
    for (int i = 0; i < 4; ++i) {
        CHECK(ext.orig_edge[i] == i);
        CHECK(ext.weights[i] == kW1235[i] * ext.scale);
    }
}

TEST_CASE("extend_to_perfect adds one clique vertex per side for k = n-1") {
    BipartiteGraph g = k22();
    ExtendedGraph ext = extend_to_perfect(g, 1, kW1235);
    CHECK(ext.graph.n() == 3);
    CHECK(ext.graph.m() == g.m() + 4); // 2 left-to-new plus 2 right-to-new clique edges
    int clique_edges = 0;
    for (int id = 0; id < ext.graph.m(); ++id)
        if (ext.orig_edge[id] < 0) ++clique_edges;
    CHECK(clique_edges == 4);
}

TEST_CASE("extended graph: perfect matchings restrict to size-k matchings") {
    BipartiteGraph g = k22();
    for (int k = 0; k <= 2; ++k) {
        ExtendedGraph ext = extend_to_perfect(g, k, kW1235);
        int np = ext.graph.n();
        auto rep = oracle::brute_force_matchings(ext.graph, ext.weights, true);
        int perfect = 0;
        for (const auto& pm : rep.all_matchings) {
            if (static_cast<int>(pm.size()) != np) continue;
            ++perfect;
            int orig = 0;
            for (int id : pm)
                if (ext.orig_edge[id] >= 0) ++orig;
            CHECK(orig == k);
        }
        CHECK(perfect > 0);
    }
}

TEST_CASE("extension preserves the original weight order on perfect matchings") {
    BipartiteGraph g = k22();
    for (int k = 0; k <= 2; ++k) {
        ExtendedGraph ext = extend_to_perfect(g, k, kW1235);
        auto rep = oracle::brute_force_matchings(ext.graph, ext.weights, true);
        struct Pm {
            std::int64_t orig_w;
            std::int64_t ext_w;
        };
        std::vector<Pm> pms;
        for (const auto& pm : rep.all_matchings) {
            if (static_cast<int>(pm.size()) != ext.graph.n()) continue;
            std::int64_t ow = 0, ew = 0;
            for (int id : pm) {
                ew += ext.weights[id];
                if (ext.orig_edge[id] >= 0) ow += kW1235[ext.orig_edge[id]];
            }
            pms.push_back({ow, ew});
        }
        for (const Pm& a : pms)
            for (const Pm& b : pms)
                if (a.orig_w < b.orig_w) CHECK(a.ext_w < b.ext_w);
    }
}

TEST_CASE("coarse_scale uses the coarser bound but the same argmin") {
    BipartiteGraph g = k22();
    for (int k = 1; k <= 2; ++k) {
        ExtendedGraph tight = extend_to_perfect(g, k, kW1235, false);
        ExtendedGraph coarse = extend_to_perfect(g, k, kW1235, true);
        CHECK(coarse.scale == 10 * 2 * 2 * 2 * 2); // 10 n^4
        CHECK(tight.scale <= coarse.scale);
        CHECK(extract_isolated_size_k(g, k, kW1235, Backend::Determinant, false) ==
              extract_isolated_size_k(g, k, kW1235, Backend::Determinant, true));
    }
}

TEST_CASE("clique_unique_matching pairs smallest with largest") {
    using P = std::pair<std::int64_t, std::int64_t>;
    CHECK(clique_unique_matching({1}, {2}) == std::vector<P>{{1, 2}});
    CHECK(clique_unique_matching({1, 2}, {3, 4}) == std::vector<P>{{1, 4}, {2, 3}});
    CHECK(clique_unique_matching({1, 2, 3}, {4, 5, 6}) ==
          std::vector<P>{{1, 6}, {2, 5}, {3, 4}});
    CHECK_THROWS_AS(clique_unique_matching({1, 2}, {3}), InputError);
}

TEST_CASE("reverse pairing strictly minimizes over all permutations") {
    // s = 3: check against all 3! assignments by explicit enumeration.
    std::vector<std::int64_t> l = {2, 5, 9}, r = {11, 14, 20};
    auto best = clique_unique_matching(l, r);
    std::int64_t best_w = 0;
    for (auto [a, b] : best) best_w += a * b;
    std::vector<int> perm = {0, 1, 2};
    int strictly_worse = 0;
    do {
        std::int64_t w = 0;
        for (int i = 0; i < 3; ++i) w += l[i] * r[perm[i]];
        if (w > best_w) ++strictly_worse;
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(strictly_worse == 5); // every non-reverse assignment loses
}

TEST_CASE("extract_isolated_perfect on both backends") {
    BipartiteGraph single(1, {{0, 0}});
    CHECK(extract_isolated_perfect(single, {9}, Backend::Determinant) == Matching{0});
    CHECK(extract_isolated_perfect(single, {9}, Backend::Combinatorial) == Matching{0});

    BipartiteGraph g = k22();
    // 1+5 = 6 vs 2+3 = 5: the cross matching wins.
    CHECK(extract_isolated_perfect(g, kW1235, Backend::Determinant) == Matching{1, 2});
    CHECK(extract_isolated_perfect(g, kW1235, Backend::Combinatorial) == Matching{1, 2});

    CHECK_THROWS_AS(extract_isolated_perfect(g, {1, 1, 1, 1}, Backend::Determinant),
                    PromiseViolation);
    CHECK_THROWS_AS(extract_isolated_perfect(g, {1, 1, 1, 1}, Backend::Combinatorial),
                    PromiseViolation);
    // No perfect matching at all.
    BipartiteGraph star(2, {{0, 0}, {0, 1}});
    CHECK_THROWS_AS(extract_isolated_perfect(star, {1, 2}, Backend::Determinant),
                    PromiseViolation);
    CHECK_THROWS_AS(extract_isolated_perfect(star, {1, 2}, Backend::Combinatorial),
                    PromiseViolation);
}

TEST_CASE("extract_isolated_size_k on both backends") {
    BipartiteGraph g = k22();
    for (Backend b : {Backend::Combinatorial, Backend::Determinant}) {
        CHECK(extract_isolated_size_k(g, 0, kW1235, b).empty());
        CHECK(extract_isolated_size_k(g, 1, kW1235, b) == Matching{0});
        CHECK(extract_isolated_size_k(g, 2, kW1235, b) == Matching{1, 2});
        // k above the maximum matching size breaks the promise.
        BipartiteGraph sparse(2, {{0, 0}});
        CHECK_THROWS_AS(extract_isolated_size_k(sparse, 2, {3}, b), PromiseViolation);
        // Ties break the promise.
        CHECK_THROWS_AS(extract_isolated_size_k(g, 1, {1, 1, 1, 1}, b), PromiseViolation);
    }
}

TEST_CASE("backends agree on random isolating instances") {
    int tested = 0;
    for (int i = 0; i < 400; ++i) {
        std::uint64_t state = mix_seed(0x150a7e5ULL, i);
        int n = 1 + static_cast<int>(splitmix64(state) % 4);
        std::vector<Edge> edges;
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (splitmix64(state) & 1) edges.push_back({u, v});
        if (edges.empty()) continue;
        BipartiteGraph g(n, edges);
        std::vector<std::int64_t> w;
        for (int e = 0; e < g.m(); ++e) w.push_back(splitmix64(state) % 16);
        int k = static_cast<int>(splitmix64(state) % (n + 1));
        if (!oracle::is_isolating(g, k, w)) continue;
        ++tested;
        Matching want = *oracle::unique_min_matching(g, k, w);
        CHECK(extract_isolated_size_k(g, k, w, Backend::Combinatorial) == want);
        CHECK(extract_isolated_size_k(g, k, w, Backend::Determinant) == want);
    }
    CHECK(tested > 50);
}
