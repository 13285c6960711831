#include "clmatch/residual.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace clmatch {

namespace {

constexpr std::int64_t kUnreached = std::numeric_limits<std::int64_t>::max();

} // namespace

std::string ResidualGraph::vertex_name(int v, int n) {
    if (v == 2 * n) return "s";
    if (v == 2 * n + 1) return "t";
    if (v < n) return "L" + std::to_string(v);
    return "R" + std::to_string(v - n);
}

ResidualGraph build_residual(const BipartiteGraph& g, const Matching& m,
                             const std::vector<std::int64_t>& w) {
    if (!validate_matching(g, m)) throw InputError("build_residual: invalid matching");
    if (static_cast<int>(w.size()) != g.m())
        throw InputError("build_residual: weight vector length mismatch");

    int n = g.n();
    std::vector<char> in_m(g.m(), 0), left(n, 0), right(n, 0);
    for (int id : m) {
        in_m[id] = 1;
        left[g.edge(id).u] = 1;
        right[g.edge(id).v] = 1;
    }

    ResidualGraph r;
    r.n = n;
    for (int u = 0; u < n; ++u)
        if (!left[u]) r.arcs.push_back({r.s(), u, 0, -1});
    for (int v = 0; v < n; ++v)
        if (!right[v]) r.arcs.push_back({n + v, r.t(), 0, -1});
    for (int id = 0; id < g.m(); ++id) {
        Edge e = g.edge(id);
        if (in_m[id]) r.arcs.push_back({n + e.v, e.u, -w[id], id});
        else r.arcs.push_back({e.u, n + e.v, w[id], id});
    }
    return r;
}

namespace {

// Bellman-Ford-style relaxation for |arcs| rounds: computes minimum weight
// over walks of at most |arcs| arcs, which equals the simple-path minimum
// whenever no cycle of weight <= 0 exists (every simple path has fewer arcs,
// and any cheaper walk would contain a nonpositive cycle).
std::vector<std::int64_t> relax_all(const ResidualGraph& r, int source, bool reverse,
                                    int skip_origin) {
    std::vector<std::int64_t> dist(r.vertex_count(), kUnreached);
    dist[source] = 0;
    std::size_t rounds = r.arcs.size();
    for (std::size_t round = 0; round < rounds; ++round) {
        bool changed = false;
        for (const ResidualArc& a : r.arcs) {
            if (a.origin >= 0 && a.origin == skip_origin) continue;
            int from = reverse ? a.to : a.from;
            int to = reverse ? a.from : a.to;
            if (dist[from] == kUnreached) continue;
            std::int64_t cand = dist[from] + a.weight;
            if (cand < dist[to]) {
                dist[to] = cand;
                changed = true;
            }
        }
        if (!changed) break;
    }
    return dist;
}

std::vector<std::optional<std::int64_t>> to_optional(const std::vector<std::int64_t>& dist) {
    std::vector<std::optional<std::int64_t>> out(dist.size());
    for (std::size_t i = 0; i < dist.size(); ++i)
        if (dist[i] != kUnreached) out[i] = dist[i];
    return out;
}

} // namespace

std::vector<std::optional<std::int64_t>> min_weight_from(const ResidualGraph& r, int a,
                                                         int skip_origin) {
    return to_optional(relax_all(r, a, false, skip_origin));
}

std::vector<std::optional<std::int64_t>> min_weight_to(const ResidualGraph& r, int b,
                                                       int skip_origin) {
    return to_optional(relax_all(r, b, true, skip_origin));
}

std::optional<std::int64_t> min_weight_path(const ResidualGraph& r, int a, int b,
                                            int skip_origin) {
    return min_weight_from(r, a, skip_origin).at(b);
}

bool no_nonpositive_cycle(const ResidualGraph& r) {
    // A cycle of weight <= 0 exists iff some vertex lies on a closed walk of
    // weight <= 0 with between 1 and |V| arcs: a nonpositive closed walk
    // decomposes into simple cycles, at least one of which is nonpositive.
    // dist_k[u] = min weight of a walk v -> u with exactly k arcs.
    int nv = r.vertex_count();
    for (int v = 0; v < nv; ++v) {
        std::vector<std::int64_t> cur(nv, kUnreached);
        cur[v] = 0;
        for (int k = 1; k <= nv; ++k) {
            std::vector<std::int64_t> nxt(nv, kUnreached);
            for (const ResidualArc& a : r.arcs) {
                if (cur[a.from] == kUnreached) continue;
                nxt[a.to] = std::min(nxt[a.to], cur[a.from] + a.weight);
            }
            if (nxt[v] != kUnreached && nxt[v] <= 0) return false;
            cur = std::move(nxt);
        }
    }
    return true;
}

bool is_maximum(const ResidualGraph& r) {
    return !min_weight_path(r, r.s(), r.t()).has_value();
}

std::optional<int> find_threshold_edge(const BipartiteGraph& g, const Matching& m,
                                       const std::vector<std::int64_t>& w) {
    ResidualGraph r = build_residual(g, m, w);
    auto from_s = min_weight_from(r, r.s());
    auto to_t = min_weight_to(r, r.t());
    auto delta_st = from_s[r.t()];
    if (!delta_st) return std::nullopt;

    std::vector<char> in_m(g.m(), 0);
    for (int id : m) in_m[id] = 1;

    for (int id = 0; id < g.m(); ++id) {
        if (in_m[id]) continue;
        Edge e = g.edge(id);
        auto du = from_s[e.u];
        auto dv = to_t[g.n() + e.v];
        // On some minimum-weight s-t path?
        if (!du || !dv || *du + w[id] + *dv != *delta_st) continue;
        // On all of them? Then removing its arc must raise the minimum.
        auto without = min_weight_path(r, r.s(), r.t(), id);
        if (without && *without == *delta_st) return id;
    }
    return std::nullopt;
}

IsolationOutcome check_k_plus_1(const BipartiteGraph& g, int k,
                                const std::vector<std::int64_t>& w, Backend backend,
                                bool coarse_scale) {
    IsolationOutcome out;
    out.m_k = extract_isolated_size_k(g, k, w, backend, coarse_scale);
    ResidualGraph r = build_residual(g, out.m_k, w);
    if (is_maximum(r)) {
        out.verdict = IsolationVerdict::Bot;
        return out;
    }
    out.threshold_edge = find_threshold_edge(g, out.m_k, w);
    out.verdict = out.threshold_edge ? IsolationVerdict::Threshold : IsolationVerdict::Isolated;
    return out;
}

std::int64_t recover_weight(const BipartiteGraph& g, int k, const std::vector<std::int64_t>& w,
                            int e, Backend backend, bool coarse_scale) {
    if (e < 0 || e >= g.m()) throw InputError("recover_weight: bad edge id");
    BipartiteGraph g2 = g.without_edge(e);
    std::vector<std::int64_t> w2;
    w2.reserve(g.m() - 1);
    for (int id = 0; id < g.m(); ++id)
        if (id != e) w2.push_back(w[id]);

    // e was a threshold edge at size k, so e is not in M^k and M^k is still
    // the isolated minimum on G minus e.
    Matching mk = extract_isolated_size_k(g2, k, w2, backend, coarse_scale);
    ResidualGraph r = build_residual(g2, mk, w2);

    Edge edge = g.edge(e);
    auto from_s = min_weight_from(r, r.s());
    auto to_t = min_weight_to(r, r.t());
    auto d_su = from_s[edge.u];
    auto d_vt = to_t[g.n() + edge.v];
    auto d_st = from_s[r.t()];
    if (!d_su || !d_vt || !d_st)
        throw InternalError("recover_weight: endpoint unreachable in the residual without e");
    return *d_st - (*d_su + *d_vt);
}

std::string dump_residual(const ResidualGraph& r) {
    std::ostringstream out;
    for (const ResidualArc& a : r.arcs) {
        out << ResidualGraph::vertex_name(a.from, r.n) << ' '
            << ResidualGraph::vertex_name(a.to, r.n) << ' ' << a.weight << ' ';
        if (a.origin >= 0) out << a.origin;
        else out << '-';
        out << '\n';
    }
    return out.str();
}

} // namespace clmatch
