#pragma once

#include <cstdint>

#include "clmatch/graph.hpp"
#include "clmatch/tape.hpp"

namespace clmatch {

enum class Family {
    RandomGnp,           // each of the n^2 edges present with probability p
    Complete,            // all n^2 edges
    Path,                // zig-zag path L0-R0-L1-R1-...
    Star,                // left vertex 0 joined to every right vertex
    CraftedNonisolating, // >= 2 edges with all-equal weights: first isolation
                         // check is guaranteed to hit a threshold edge
    ExhaustiveSmall,     // edge set given by a bit mask over the n^2 slots
};

enum class WeightMode {
    TapeRandom,    // whole tape seeded random
    AllEqual,      // every weight field holds the same seeded value
    DistinctPowers // weight field i holds 1 << (i mod (b-1)); reserves random
};

struct GenSpec {
    Family family = Family::RandomGnp;
    int n = 3;
    double p = 0.5;         // RandomGnp only
    std::uint64_t mask = 0; // ExhaustiveSmall only
    WeightMode weights = WeightMode::TapeRandom;
    int weight_bits = 0;    // 0 = layout default for n
    int num_reserves = -1;  // -1 = layout default
    int scratch_bits = 0;
    std::uint64_t seed = 0;
};

struct GeneratedInstance {
    BipartiteGraph g;
    TapeLayout layout;
    BitVec tape_bits;
};

// Edge i of the canonical (u, v) lexicographic order over all n^2 pairs is
// present iff bit i of mask is set. Requires n^2 <= 63.
BipartiteGraph graph_from_mask(int n, std::uint64_t mask);

GeneratedInstance generate(const GenSpec& spec);

} // namespace clmatch
