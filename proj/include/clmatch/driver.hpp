#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "clmatch/graph.hpp"
#include "clmatch/isolation.hpp"
#include "clmatch/tape.hpp"

namespace clmatch {

struct DriverConfig {
    Backend backend = Backend::Combinatorial;
    bool coarse_scale = false;   // determinant extension uses 10*n^4 instead of the exact bound
    int fallback_threshold = -1; // comps allowed before falling back; -1 = num_reserves
    bool force_fallback = false;
    bool record_trace = false;

    // Weighted extension: effective weight = input_scale * input_weights[e] +
    // tape weight. Empty input_weights means plain catalytic weights.
    std::vector<std::int64_t> input_weights;
    std::int64_t input_scale = 0;

    // Maximum-matching routine used when compression budget runs out.
    // Defaults to Hopcroft-Karp when unset.
    std::function<Matching(const BipartiteGraph&)> fallback;

    // Test hook invoked before every isolation check with (k, effective
    // weights); used to assert the isolation induction from outside.
    std::function<void(const BipartiteGraph&, int, const std::vector<std::int64_t>&)>
        isolation_hook;
};

struct CompressionRecord {
    int c = 0;    // compression counter value when this comp fired
    int k = 0;    // matching size whose isolation held when k+1 failed
    int e = 0;    // erased edge id
    int slot = 0; // reserve slot written (== c)
};

struct RunReport {
    Matching matching;
    int size = 0;
    int compressions = 0;
    bool fallback_fired = false;
    bool tape_restored = false;
    int freed_bits_peak = 0;
    std::int64_t input_weight = 0; // total input weight of matching (weighted runs)
    std::vector<std::string> trace;
};

// Effective per-edge weights a run sees: tape weights, plus scaled input
// weights in the weighted extension.
std::vector<std::int64_t> effective_weights(const CatalyticTape& tape, const DriverConfig& cfg);

// Compresses: finds the threshold edge e at size k, moves reserve slot c's
// content into e's weight field, and packs (k, e) plus zero padding into the
// slot. PROMISE: the current weights isolate at k but not k+1.
CompressionRecord comp(CatalyticTape& tape, const BipartiteGraph& g, int k, int c,
                       const DriverConfig& cfg = {});

// Inverts one comp: reads (k, e) from the slot, recomputes the isolated
// size-k matching on G minus e, recovers the erased weight from the min-path
// identity, and swaps the reserve value back into the slot.
void decomp(CatalyticTape& tape, const BipartiteGraph& g, int slot, const DriverConfig& cfg = {});

Matching fallback_direct(const BipartiteGraph& g);

// The catalytic loop: grow k while isolation holds, compress on threshold,
// fall back when the compression budget is exhausted, then unwind every
// compression in reverse so the tape ends bit-identical to its start.
RunReport run_clp_match(const BipartiteGraph& g, CatalyticTape& tape,
                        const DriverConfig& cfg = {});

} // namespace clmatch
