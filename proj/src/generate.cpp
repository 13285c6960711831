#include "clmatch/generate.hpp"

#include <random>

#include "clmatch/util.hpp"

namespace clmatch {

namespace {

// Keeps edge sampling independent of the standard library's distribution
// internals: include iff the top 53 bits fall below p * 2^53.
bool coin(std::mt19937_64& rng, double p) {
    return static_cast<double>(rng() >> 11) < p * 9007199254740992.0;
}

std::vector<Edge> family_edges(const GenSpec& spec, std::mt19937_64& rng) {
    std::vector<Edge> edges;
    switch (spec.family) {
    case Family::RandomGnp:
        for (int u = 0; u < spec.n; ++u)
            for (int v = 0; v < spec.n; ++v)
                if (coin(rng, spec.p)) edges.push_back({u, v});
        break;
    case Family::Complete:
        for (int u = 0; u < spec.n; ++u)
            for (int v = 0; v < spec.n; ++v) edges.push_back({u, v});
        break;
    case Family::Path:
        for (int i = 0; i < spec.n; ++i) {
            edges.push_back({i, i});
            if (i + 1 < spec.n) edges.push_back({i + 1, i});
        }
        break;
    case Family::Star:
        for (int v = 0; v < spec.n; ++v) edges.push_back({0, v});
        break;
    case Family::CraftedNonisolating:
        if (spec.n < 2)
            throw InputError("crafted family needs n >= 2 for two guaranteed edges");
        edges.push_back({0, 0});
        edges.push_back({1, 1});
        for (int u = 0; u < spec.n; ++u)
            for (int v = 0; v < spec.n; ++v) {
                if ((u == 0 && v == 0) || (u == 1 && v == 1)) continue;
                if (coin(rng, 0.5)) edges.push_back({u, v});
            }
        break;
    case Family::ExhaustiveSmall: {
        if (spec.n * spec.n > 63) throw InputError("edge mask covers at most 63 slots");
        int i = 0;
        for (int u = 0; u < spec.n; ++u)
            for (int v = 0; v < spec.n; ++v, ++i)
                if ((spec.mask >> i) & 1) edges.push_back({u, v});
        break;
    }
    }
    return edges;
}

} // namespace

BipartiteGraph graph_from_mask(int n, std::uint64_t mask) {
    GenSpec spec;
    spec.family = Family::ExhaustiveSmall;
    spec.n = n;
    spec.mask = mask;
    std::mt19937_64 rng(0);
    return BipartiteGraph(n, family_edges(spec, rng));
}

GeneratedInstance generate(const GenSpec& spec) {
    if (spec.n < 1 || spec.n > kMaxN)
        throw InputError("generate: n out of range [1, " + std::to_string(kMaxN) + "]");
    std::mt19937_64 rng(mix_seed(spec.seed, 0x67656e));
    BipartiteGraph g(spec.n, family_edges(spec, rng));
    TapeLayout layout =
        TapeLayout::for_graph(g, spec.weight_bits, spec.num_reserves, spec.scratch_bits);

    BitVec bits = BitVec::from_seed(mix_seed(spec.seed, 0x74617065), layout.total_bits());
    WeightMode mode = spec.weights;
    if (spec.family == Family::CraftedNonisolating) mode = WeightMode::AllEqual;
    switch (mode) {
    case WeightMode::TapeRandom:
        break;
    case WeightMode::AllEqual: {
        std::uint64_t state = mix_seed(spec.seed, 0x6571);
        std::uint64_t value = splitmix64(state) & ((std::uint64_t{1} << layout.weight_bits) - 1);
        for (int i = 0; i < layout.num_weights; ++i)
            bits.write_field(layout.weight_offset(i), layout.weight_bits, value);
        break;
    }
    case WeightMode::DistinctPowers: {
        int span = layout.weight_bits > 1 ? layout.weight_bits - 1 : 1;
        for (int i = 0; i < layout.num_weights; ++i)
            bits.write_field(layout.weight_offset(i), layout.weight_bits,
                             std::uint64_t{1} << (i % span));
        break;
    }
    }
    return {std::move(g), layout, std::move(bits)};
}

} // namespace clmatch
