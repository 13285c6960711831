#pragma once

#include <cstdint>
#include <string>

#include "clmatch/bitvec.hpp"
#include "clmatch/graph.hpp"
#include "clmatch/isolation.hpp"

namespace clmatch {

// Field widths of the lossy code. A weight field spans full_bits; the packed
// (k*, e*) record appended by compression spans rec_bits = full_bits - 1, so
// compression always shrinks the string by exactly one bit.
struct LossyWidths {
    int full_bits = 0;   // ceil(log2(n+1)) + 2*ceil(log2 n) + 1
    int rec_bits = 0;    // ceil(log2(n+1)) + 2*ceil(log2 n)
    int k_bits = 0;
    int vertex_bits = 0;
};

LossyWidths lossy_widths(int n);

// Instance bundle: the graph plus the string length f = |E| * full_bits.
struct LossyInstance {
    BipartiteGraph g;
    LossyWidths widths;
    std::size_t f = 0;
};

LossyInstance make_lossy_instance(const BipartiteGraph& g);

// Compression map {0,1}^f -> {0,1}^(f-1). Interprets x as |E| weight fields,
// finds the minimal k* where the weights isolate at k* but not k*+1, deletes
// the threshold edge's field and appends the packed (k*, e*) record. When the
// weights isolate all the way to a maximum matching, outputs all zeros.
BitVec lossy_comp(const BipartiteGraph& g, const BitVec& x, Backend backend = Backend::Combinatorial);

// Total inverse attempt {0,1}^(f-1) -> {0,1}^f. Genuine compressions invert
// exactly; anything unreconstructible maps to the all-zero weight string.
BitVec lossy_decomp(const BipartiteGraph& g, const BitVec& y, Backend backend = Backend::Combinatorial);

bool lossy_roundtrip_ok(const BipartiteGraph& g, const BitVec& x,
                        Backend backend = Backend::Combinatorial);

// Maximum-matching extractor for roundtrip-failing strings.
// PROMISE: lossy_decomp(lossy_comp(x)) != x; validated internally, violations
// raise ContractViolation. Returns the matching of the largest size whose
// extraction succeeds, which the promise makes a maximum matching.
Matching a2_extract(const BipartiteGraph& g, const BitVec& x,
                    Backend backend = Backend::Combinatorial);

enum class LossySolveMode { Exhaustive, Random };

struct LossySolveResult {
    BitVec witness;
    long samples_tried = 0;
};

// Finds x with a failing roundtrip; one exists by pigeonhole since comp maps
// 2^f strings into 2^(f-1).
LossySolveResult lossy_solve(const BipartiteGraph& g, LossySolveMode mode, long samples,
                             std::uint64_t seed, Backend backend = Backend::Combinatorial);

} // namespace clmatch
