#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "clmatch/graph.hpp"
#include "clmatch/isolation.hpp"

namespace clmatch {

// Directed residual graph of a matching. Vertex numbering: left i -> i,
// right j -> n + j, source s -> 2n, sink t -> 2n + 1.
struct ResidualArc {
    int from = 0;
    int to = 0;
    std::int64_t weight = 0; // 0 on s/t arcs, -W(e) on matched arcs, W(e) otherwise
    int origin = -1;         // originating edge id, -1 for s/t arcs
};

struct ResidualGraph {
    int n = 0;
    std::vector<ResidualArc> arcs;

    int s() const { return 2 * n; }
    int t() const { return 2 * n + 1; }
    int vertex_count() const { return 2 * n + 2; }

    static std::string vertex_name(int v, int n);
};

// Arcs: s -> u for left u unmatched, v -> t for right v unmatched,
// v -> u for (u,v) in M, u -> v for (u,v) in E \ M.
ResidualGraph build_residual(const BipartiteGraph& g, const Matching& m,
                             const std::vector<std::int64_t>& w);

// Minimum weight over walks from a to b of at most |arcs| arcs; equals the
// minimum simple-path weight when the residual has no cycle of weight <= 0.
// skip_arc removes one arc by index, skip_origin removes the arc originating
// from that edge id. nullopt when unreachable.
std::optional<std::int64_t> min_weight_path(const ResidualGraph& r, int a, int b,
                                            int skip_origin = -1);

// Single-source variant: minimum walk weight from a to every vertex.
std::vector<std::optional<std::int64_t>> min_weight_from(const ResidualGraph& r, int a,
                                                         int skip_origin = -1);
// Single-sink variant: minimum walk weight from every vertex to b.
std::vector<std::optional<std::int64_t>> min_weight_to(const ResidualGraph& r, int b,
                                                       int skip_origin = -1);

// True iff no directed cycle of weight <= 0 exists (diagnostic; the residual
// of an isolating weight assignment is guaranteed to have none).
bool no_nonpositive_cycle(const ResidualGraph& r);

// True iff t is unreachable from s, i.e. no augmenting path, i.e. M maximum.
bool is_maximum(const ResidualGraph& r);

// First canonical edge of E \ M lying on some but not all minimum-weight
// s-t paths; nullopt when every min path is edge-disjoint-forced (isolated)
// or when no s-t path exists.
std::optional<int> find_threshold_edge(const BipartiteGraph& g, const Matching& m,
                                       const std::vector<std::int64_t>& w);

enum class IsolationVerdict {
    Bot,       // M^k is maximum: no size-(k+1) matching
    Isolated,  // w isolates at size k+1
    Threshold, // w does not isolate at k+1; threshold_edge witnesses it
};

struct IsolationOutcome {
    IsolationVerdict verdict = IsolationVerdict::Bot;
    Matching m_k;                     // the isolated size-k matching
    std::optional<int> threshold_edge;
};

// PROMISE: w isolates at size k.
IsolationOutcome check_k_plus_1(const BipartiteGraph& g, int k,
                                const std::vector<std::int64_t>& w,
                                Backend backend = Backend::Combinatorial,
                                bool coarse_scale = false);

// Recovers the erased weight of edge e from everything else: w's entry for e
// is ignored, the isolated size-k matching is recomputed on G minus e, and the
// weight falls out of the min-path identity. PROMISE: e was a threshold edge
// for the full assignment at size k.
std::int64_t recover_weight(const BipartiteGraph& g, int k, const std::vector<std::int64_t>& w,
                            int e, Backend backend = Backend::Combinatorial,
                            bool coarse_scale = false);

// Debug dump: one arc per line, "u v weight origin".
std::string dump_residual(const ResidualGraph& r);

} // namespace clmatch
