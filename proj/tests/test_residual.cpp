#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "clmatch/oracle.hpp"
#include "clmatch/residual.hpp"
#include "clmatch/util.hpp"

using namespace clmatch;

namespace {

BipartiteGraph k22() { return BipartiteGraph(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}); }

bool has_arc(const ResidualGraph& r, int from, int to, std::int64_t weight, int origin) {
    return std::any_of(r.arcs.begin(), r.arcs.end(), [&](const ResidualArc& a) {
        return a.from == from && a.to == to && a.weight == weight && a.origin == origin;
    });
}

} // namespace

TEST_CASE("build_residual applies the four arc rules") {
    // Single edge (0,0), n = 1: left 0 -> 0, right 0 -> 1, s = 2, t = 3.
    BipartiteGraph single(1, {{0, 0}});

    ResidualGraph r0 = build_residual(single, {}, {5});
    CHECK(r0.arcs.size() == 3);
    CHECK(has_arc(r0, 2, 0, 0, -1)); // s -> unmatched left
    CHECK(has_arc(r0, 0, 1, 5, 0));  // unmatched edge, forward, +W
    CHECK(has_arc(r0, 1, 3, 0, -1)); // unmatched right -> t

    ResidualGraph r1 = build_residual(single, {0}, {5});
    CHECK(r1.arcs.size() == 1);
    CHECK(has_arc(r1, 1, 0, -5, 0)); // matched edge, backward, -W

    // K_{2,2}, M = {(0,0)}: left 0,1; right 2,3; s = 4, t = 5.
    ResidualGraph r2 = build_residual(k22(), {0}, {1, 2, 3, 5});
    CHECK(has_arc(r2, 2, 0, -1, 0)); // matched (0,0) backward
    CHECK(has_arc(r2, 4, 1, 0, -1)); // s -> left 1
    CHECK(has_arc(r2, 3, 5, 0, -1)); // right 1 -> t
    CHECK(has_arc(r2, 0, 3, 2, 1));
    CHECK(has_arc(r2, 1, 2, 3, 2));
    CHECK(has_arc(r2, 1, 3, 5, 3));
    CHECK(r2.arcs.size() == 6);

    BipartiteGraph bad(1, {{0, 0}});
    CHECK_THROWS_AS(build_residual(bad, {0, 0}, {5}), InputError);
}

TEST_CASE("min_weight_path") {
    BipartiteGraph single(1, {{0, 0}});
    ResidualGraph r = build_residual(single, {}, {5});
    CHECK(min_weight_path(r, r.s(), r.t()) == 5);

    BipartiteGraph empty(2, {});
    ResidualGraph re = build_residual(empty, {}, {});
    CHECK_FALSE(min_weight_path(re, re.s(), re.t()).has_value());

    ResidualGraph rk = build_residual(k22(), {}, {1, 1, 1, 1});
    CHECK(min_weight_path(rk, rk.s(), rk.t()) == 1); // four tied single-edge paths

    // skip_origin removes exactly the arc of that edge.
    ResidualGraph rw = build_residual(k22(), {}, {1, 2, 3, 5});
    CHECK(min_weight_path(rw, rw.s(), rw.t()) == 1);
    CHECK(min_weight_path(rw, rw.s(), rw.t(), 0) == 2);
}

TEST_CASE("min_weight_from and min_weight_to match pairwise queries") {
    ResidualGraph r = build_residual(k22(), {0}, {1, 2, 3, 5});
    auto from_s = min_weight_from(r, r.s());
    auto to_t = min_weight_to(r, r.t());
    for (int v = 0; v < r.vertex_count(); ++v) {
        CHECK(from_s[v] == min_weight_path(r, r.s(), v));
        CHECK(to_t[v] == min_weight_path(r, v, r.t()));
    }
}

TEST_CASE("is_maximum is the Berge condition") {
    BipartiteGraph g = k22();
    CHECK(is_maximum(build_residual(g, {0, 3}, {1, 1, 1, 1}))); // perfect: no s arcs
    CHECK_FALSE(is_maximum(build_residual(g, {}, {1, 1, 1, 1})));

    // Path graph: M = {(1,0)} leaves the augmenting path through (0,0),(1,1).
    BipartiteGraph path(2, {{0, 0}, {1, 0}, {1, 1}});
    CHECK_FALSE(is_maximum(build_residual(path, {1}, {1, 1, 1})));
    CHECK(is_maximum(build_residual(path, {0, 2}, {1, 1, 1})));
}

TEST_CASE("no_nonpositive_cycle") {
    BipartiteGraph g = k22();
    // M = {(0,0)}, distinct weights: the only cycle would need two matched arcs.
    CHECK(no_nonpositive_cycle(build_residual(g, {0}, {1, 2, 3, 5})));
    // Perfect matching with all-equal weights: alternating cycle of weight 0.
    CHECK_FALSE(no_nonpositive_cycle(build_residual(g, {0, 3}, {1, 1, 1, 1})));
    // Same cycle under isolating weights has weight 5 - 1 + ... strictly positive.
    CHECK(no_nonpositive_cycle(build_residual(g, {1, 2}, {1, 2, 3, 5})));
}

TEST_CASE("find_threshold_edge") {
    BipartiteGraph g = k22();

    // Isolating at k+1: no threshold edge.
    CHECK_FALSE(find_threshold_edge(g, {0}, {1, 2, 3, 5}).has_value());
    CHECK_FALSE(find_threshold_edge(g, {}, {1, 2, 3, 5}).has_value());

    // All weights equal at k = 0: every edge qualifies, edge 0 is first.
    CHECK(find_threshold_edge(g, {}, {1, 1, 1, 1}) == 0);

    // Unique minimum with a tied second-best is still isolated: the tie must
    // be at the minimum itself for a threshold edge to exist.
    CHECK_FALSE(find_threshold_edge(g, {}, {1, 2, 2, 5}).has_value());
}

TEST_CASE("check_k_plus_1 maps the three verdicts") {
    BipartiteGraph g = k22();

    IsolationOutcome bot = check_k_plus_1(g, 2, {1, 2, 3, 5});
    CHECK(bot.verdict == IsolationVerdict::Bot);
    CHECK(bot.m_k == Matching{1, 2});

    IsolationOutcome iso = check_k_plus_1(g, 1, {1, 2, 3, 5});
    CHECK(iso.verdict == IsolationVerdict::Isolated);
    CHECK(iso.m_k == Matching{0});
    CHECK_FALSE(iso.threshold_edge.has_value());

    IsolationOutcome thr = check_k_plus_1(g, 0, {1, 1, 1, 1});
    CHECK(thr.verdict == IsolationVerdict::Threshold);
    CHECK(thr.m_k.empty());
    CHECK(thr.threshold_edge == 0);

    // The promise (isolation at k) is checked defensively.
    CHECK_THROWS_AS(check_k_plus_1(g, 1, {1, 1, 1, 1}), PromiseViolation);

    for (Backend b : {Backend::Combinatorial, Backend::Determinant}) {
        IsolationOutcome o = check_k_plus_1(g, 0, {1, 1, 1, 1}, b);
        CHECK(o.verdict == IsolationVerdict::Threshold);
        CHECK(o.threshold_edge == 0);
    }
}

TEST_CASE("threshold edge is never in the isolated matching") {
    for (int i = 0; i < 300; ++i) {
        std::uint64_t state = mix_seed(0x7e51d0aULL, i);
        int n = 1 + static_cast<int>(splitmix64(state) % 4);
        std::vector<Edge> edges;
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (splitmix64(state) & 1) edges.push_back({u, v});
        if (edges.empty()) continue;
        BipartiteGraph g(n, edges);
        std::vector<std::int64_t> w;
        for (int e = 0; e < g.m(); ++e) w.push_back(splitmix64(state) % 8);
        int k = static_cast<int>(splitmix64(state) % (n + 1));
        if (!oracle::is_isolating(g, k, w)) continue;
        IsolationOutcome out = check_k_plus_1(g, k, w);
        if (out.verdict != IsolationVerdict::Threshold) continue;
        CHECK(!std::binary_search(out.m_k.begin(), out.m_k.end(), *out.threshold_edge));
    }
}

TEST_CASE("recover_weight reconstructs the erased value") {
    BipartiteGraph g = k22();

    // All-equal weights: e = (0,0) is the k = 0 threshold edge; the erased
    // entry is ignored, so feed garbage there.
    std::vector<std::int64_t> w = {999, 1, 1, 1};
    CHECK(recover_weight(g, 0, w, 0) == 1);

    // Weight-0 threshold edge.
    std::vector<std::int64_t> wz = {777, 0, 0, 0};
    CHECK(recover_weight(g, 0, wz, 0) == 0);

    for (Backend b : {Backend::Combinatorial, Backend::Determinant})
        CHECK(recover_weight(g, 0, w, 0, b) == 1);
}

TEST_CASE("recover_weight roundtrips random threshold instances") {
    int hits = 0;
    for (int i = 0; i < 2000 && hits < 120; ++i) {
        std::uint64_t state = mix_seed(0xd3c0de5ULL, i);
        int n = 2 + static_cast<int>(splitmix64(state) % 3);
        std::vector<Edge> edges;
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                if (splitmix64(state) & 1) edges.push_back({u, v});
        if (edges.size() < 2) continue;
        BipartiteGraph g(n, edges);
        std::vector<std::int64_t> w;
        for (int e = 0; e < g.m(); ++e) w.push_back(splitmix64(state) % 8);
        int k = static_cast<int>(splitmix64(state) % n);
        if (!oracle::is_isolating(g, k, w)) continue;
        IsolationOutcome out = check_k_plus_1(g, k, w);
        if (out.verdict != IsolationVerdict::Threshold) continue;
        ++hits;
        int e = *out.threshold_edge;
        std::vector<std::int64_t> erased = w;
        erased[e] = 0;
        CHECK(recover_weight(g, k, erased, e) == w[e]);
    }
    CHECK(hits >= 100);
}

TEST_CASE("residual dump lists every arc") {
    ResidualGraph r = build_residual(k22(), {0}, {1, 2, 3, 5});
    std::string text = dump_residual(r);
    CHECK(std::count(text.begin(), text.end(), '\n') == static_cast<long>(r.arcs.size()));
    CHECK(text.find("s ") != std::string::npos);
}
