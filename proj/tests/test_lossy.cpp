#include <doctest.h>

#include <cstdint>
#include <vector>

#include "clmatch/lossy.hpp"
#include "clmatch/oracle.hpp"
#include "clmatch/util.hpp"

using namespace clmatch;

namespace {

BipartiteGraph k22() { return BipartiteGraph(2, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}); }

BitVec encode_weights(const BipartiteGraph& g, const std::vector<std::uint64_t>& w) {
    LossyWidths widths = lossy_widths(g.n());
    BitVec x(static_cast<std::size_t>(g.m()) * widths.full_bits);
    for (int i = 0; i < g.m(); ++i)
        x.write_field(static_cast<std::size_t>(i) * widths.full_bits, widths.full_bits, w[i]);
    return x;
}

} // namespace

TEST_CASE("lossy widths shrink by exactly one bit") {
    LossyWidths w1 = lossy_widths(1);
    CHECK(w1.full_bits == 2);
    CHECK(w1.rec_bits == 1);

    LossyWidths w2 = lossy_widths(2);
    CHECK(w2.full_bits == 5);
    CHECK(w2.rec_bits == 4);
    CHECK(w2.k_bits == 2);
    CHECK(w2.vertex_bits == 1);

    LossyWidths w3 = lossy_widths(3);
    CHECK(w3.full_bits == 7);
    CHECK(w3.rec_bits == 6);

    LossyInstance inst = make_lossy_instance(k22());
    CHECK(inst.f == 20);
}

TEST_CASE("compression packs the minimal failing size and its threshold edge") {
    BipartiteGraph g = k22();
    BitVec x = encode_weights(g, {3, 3, 3, 3});
    BitVec y = lossy_comp(g, x);
    REQUIRE(y.size() == 19);

    LossyWidths w = lossy_widths(2);
    // Fields of the surviving edges 1,2,3 come first, then (k*, u, v).
    CHECK(y.read_field(0, 5) == 3);
    CHECK(y.read_field(5, 5) == 3);
    CHECK(y.read_field(10, 5) == 3);
    std::size_t rec = 15;
    CHECK(y.read_field(rec, w.k_bits) == 0);                              // k* = 0
    CHECK(y.read_field(rec + w.k_bits, w.vertex_bits) == 0);              // u = 0
    CHECK(y.read_field(rec + w.k_bits + w.vertex_bits, w.vertex_bits) == 0); // v = 0

    CHECK(lossy_decomp(g, y) == x);
    CHECK(lossy_roundtrip_ok(g, x));
}

TEST_CASE("fully isolating weights compress to zeros and fail the roundtrip") {
    BipartiteGraph g = k22();
    BitVec x = encode_weights(g, {1, 2, 4, 8});
    BitVec y = lossy_comp(g, x);
    CHECK(y.size() == 19);
    CHECK(y.is_zero());
    CHECK(lossy_decomp(g, y) != x);
    CHECK_FALSE(lossy_roundtrip_ok(g, x));
}

TEST_CASE("length contracts are enforced") {
    BipartiteGraph g = k22();
    CHECK_THROWS_AS(lossy_comp(g, BitVec(19)), InputError);
    CHECK_THROWS_AS(lossy_decomp(g, BitVec(20)), InputError);
    CHECK_THROWS_AS(a2_extract(g, BitVec(19)), InputError);
    BipartiteGraph empty(2, {});
    CHECK_THROWS_AS(lossy_comp(empty, BitVec(0)), InputError);
}

TEST_CASE("decompression is total on arbitrary strings") {
    BipartiteGraph g = k22();
    for (int i = 0; i < 500; ++i) {
        BitVec y = BitVec::from_seed(mix_seed(0x70741ULL, i), 19);
        BitVec x = lossy_decomp(g, y);
        CHECK(x.size() == 20);
    }
}

TEST_CASE("extractor turns any failing string into a maximum matching") {
    BipartiteGraph g = k22();

    BitVec isolating = encode_weights(g, {1, 2, 4, 8});
    Matching m = a2_extract(g, isolating);
    CHECK(m == Matching{1, 2}); // min-weight perfect matching: 2+4 beats 1+8
    CHECK(validate_matching(g, m));

    // Roundtripping strings violate the promise.
    BitVec equal = encode_weights(g, {3, 3, 3, 3});
    CHECK_THROWS_AS(a2_extract(g, equal), ContractViolation);

    // Edgeless graph: the empty matching is the maximum.
    BipartiteGraph none(2, {});
    CHECK(a2_extract(none, BitVec(0)).empty());
}

TEST_CASE("single-edge dichotomy, exhaustive") {
    BipartiteGraph g(1, {{0, 0}});
    LossyInstance inst = make_lossy_instance(g);
    REQUIRE(inst.f == 2);
    BitVec x(2);
    int rt_ok = 0;
    for (int i = 0; i < 4; ++i) {
        bool ok = lossy_roundtrip_ok(g, x);
        if (ok) {
            ++rt_ok;
            CHECK_THROWS_AS(a2_extract(g, x), ContractViolation);
        } else {
            CHECK(a2_extract(g, x) == Matching{0});
        }
        x.increment();
    }
    CHECK(rt_ok == 1); // only the all-zero string survives the n=1 special case
}

TEST_CASE("two-disjoint-edge dichotomy, exhaustive with pigeonhole") {
    BipartiteGraph g(2, {{0, 0}, {1, 1}});
    LossyInstance inst = make_lossy_instance(g);
    REQUIRE(inst.f == 10);
    BitVec x(10);
    long rt_ok = 0;
    for (long i = 0; i < 1024; ++i) {
        BitVec y = lossy_comp(g, x);
        REQUIRE(y.size() == 9);
        if (lossy_decomp(g, y) == x) {
            ++rt_ok;
        } else {
            Matching m = a2_extract(g, x);
            CHECK(validate_matching(g, m));
            CHECK(m.size() == 2);
        }
        x.increment();
    }
    // Equal fields roundtrip, nothing else does; far below the 2^9 pigeonhole cap.
    CHECK(rt_ok == 32);
}

TEST_CASE("lossy_solve finds a witness in both modes") {
    BipartiteGraph single(1, {{0, 0}});
    LossySolveResult ex = lossy_solve(single, LossySolveMode::Exhaustive, 0, 0);
    CHECK_FALSE(lossy_roundtrip_ok(single, ex.witness));
    CHECK(ex.samples_tried == 2); // 00 roundtrips, 01 is the first failure

    BipartiteGraph g = k22();
    LossySolveResult rnd = lossy_solve(g, LossySolveMode::Random, 5000, 0x5eedULL);
    CHECK_FALSE(lossy_roundtrip_ok(g, rnd.witness));
    CHECK(rnd.witness.size() == 20);

    Matching m = a2_extract(g, rnd.witness);
    CHECK(validate_matching(g, m));
    CHECK(static_cast<int>(m.size()) == oracle::max_matching_size(g));
}
