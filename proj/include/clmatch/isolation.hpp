#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "clmatch/graph.hpp"

namespace clmatch {

enum class Backend {
    Combinatorial, // direct enumeration of size-k matchings
    Determinant,   // clique extension + Edmonds matrix + minor parity
};

// Result of extend_to_perfect: a balanced bipartite graph on 2n-k vertices per
// side whose perfect matchings correspond 1:1 to size-k matchings of the
// original graph, weighted so that the unique minimum survives the extension.
struct ExtendedGraph {
    BipartiteGraph graph;               // the extended graph G'
    std::vector<std::int64_t> weights;  // W', per canonical edge of graph
    int k = 0;
    int orig_n = 0;
    std::int64_t scale = 1;             // S: original weights enter as W(e)*S
    std::vector<int> orig_edge;         // original edge id per G' edge, -1 for clique edges
    std::vector<std::int64_t> left_global;  // 1-based global index per left vertex
    std::vector<std::int64_t> right_global; // 1-based global index per right vertex
};

// Builds G' by adding n-k new vertices per side, a clique from original left
// vertices to new right vertices and one from original right vertices to new
// left vertices. Clique edge weights are products of the fixed global vertex
// indices; original edges are scaled by S = B+1 where B bounds the clique
// weight any extension can carry (coarse_scale switches S to 10*n^4).
ExtendedGraph extend_to_perfect(const BipartiteGraph& g, int k,
                                const std::vector<std::int64_t>& w, bool coarse_scale = false);

// Unique minimum-weight perfect matching of a weighted bipartite clique whose
// sides carry the given sorted, strictly increasing indices and whose edge
// weights are index products: pairs the i-th smallest left index with the
// i-th largest right index.
std::vector<std::pair<std::int64_t, std::int64_t>> clique_unique_matching(
    const std::vector<std::int64_t>& left_indices, const std::vector<std::int64_t>& right_indices);

// Unique minimum-weight perfect matching of (g, w).
// PROMISE: w isolates a perfect matching. Violations raise PromiseViolation.
Matching extract_isolated_perfect(const BipartiteGraph& g, const std::vector<std::int64_t>& w,
                                  Backend backend = Backend::Determinant);

// Unique minimum-weight size-k matching of (g, w).
// PROMISE: w isolates at size k. Violations raise PromiseViolation.
Matching extract_isolated_size_k(const BipartiteGraph& g, int k,
                                 const std::vector<std::int64_t>& w,
                                 Backend backend = Backend::Combinatorial,
                                 bool coarse_scale = false);

} // namespace clmatch
