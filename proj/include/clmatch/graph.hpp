#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "clmatch/errors.hpp"

namespace clmatch {

// Hard desk-scale cap on vertices per side.
inline constexpr int kMaxN = 16;

struct Edge {
    int u; // left vertex, 0-based
    int v; // right vertex, 0-based
};

inline bool operator==(Edge a, Edge b) { return a.u == b.u && a.v == b.v; }

// Edge subsets and matchings are sorted lists of canonical edge ids.
using EdgeSet = std::vector<int>;
using Matching = std::vector<int>;

// Balanced bipartite graph with n vertices per side. Edges are kept in
// canonical order: sorted lexicographically by (u, v). Edge ids index that
// order and are the only edge handles used across the library.
class BipartiteGraph {
public:
    BipartiteGraph(int n, std::vector<Edge> edges);

    int n() const { return n_; }
    int m() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    Edge edge(int id) const { return edges_.at(id); }

    // Canonical id for (u, v), or nullopt if the edge is absent.
    std::optional<int> edge_id(int u, int v) const;

    const std::vector<int>& left_edges(int u) const { return left_adj_.at(u); }
    const std::vector<int>& right_edges(int v) const { return right_adj_.at(v); }

    // Copy with one edge removed; ids are renumbered canonically.
    BipartiteGraph without_edge(int id) const;

    bool operator==(const BipartiteGraph& o) const;

private:
    int n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> left_adj_;
    std::vector<std::vector<int>> right_adj_;
};

// Weight assignment read from or destined for a tape weight region: one value
// per canonical edge, each in [0, 2^bits).
struct WeightAssignment {
    std::vector<std::int64_t> w;
    int bits = 0;
};

void validate_weights(const BipartiteGraph& g, const WeightAssignment& w);

std::int64_t matching_weight(const Matching& m, const std::vector<std::int64_t>& w);

bool validate_matching(const BipartiteGraph& g, const Matching& m);

// Both return (A \ B) union (B \ A); two names are kept because call sites
// read differently (matching-vs-matching versus matching-vs-path).
EdgeSet symmetric_difference(const EdgeSet& a, const EdgeSet& b);
EdgeSet xor_apply(const EdgeSet& m, const EdgeSet& s);

enum class ComponentKind {
    EvenAlternatingCycle,
    EvenAlternatingPath,
    AugmentingWrtM1,
    AugmentingWrtM2,
};

struct Component {
    ComponentKind kind;
    EdgeSet edges;
};

// Decomposes H into connected components and classifies each one.
// Preconditions: M1, M2 are valid matchings of g and H = M1 symdiff M2.
std::vector<Component> classify_components(const BipartiteGraph& g, const EdgeSet& h,
                                           const Matching& m1, const Matching& m2);

// Text format: first line "n m", then m lines "u v". Duplicate edges rejected.
BipartiteGraph read_graph(std::istream& in);
BipartiteGraph read_graph_file(const std::string& path);
std::string format_graph(const BipartiteGraph& g);

// Weight file: one integer per canonical edge, whitespace separated.
std::vector<std::int64_t> read_weight_file(const std::string& path, const BipartiteGraph& g);

} // namespace clmatch
