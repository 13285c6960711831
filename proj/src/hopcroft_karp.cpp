#include "clmatch/hopcroft_karp.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace clmatch {

namespace {

constexpr int kInf = std::numeric_limits<int>::max();

struct HK {
    const BipartiteGraph& g;
    std::vector<int> match_l, match_r; // partner vertex or -1
    std::vector<int> dist;

    explicit HK(const BipartiteGraph& graph)
        : g(graph), match_l(graph.n(), -1), match_r(graph.n(), -1), dist(graph.n(), kInf) {}

    bool bfs() {
        std::queue<int> q;
        for (int u = 0; u < g.n(); ++u) {
            if (match_l[u] == -1) {
                dist[u] = 0;
                q.push(u);
            } else {
                dist[u] = kInf;
            }
        }
        bool reachable_free = false;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int id : g.left_edges(u)) {
                int v = g.edge(id).v;
                int w = match_r[v];
                if (w == -1) {
                    reachable_free = true;
                } else if (dist[w] == kInf) {
                    dist[w] = dist[u] + 1;
                    q.push(w);
                }
            }
        }
        return reachable_free;
    }

    bool dfs(int u) {
        for (int id : g.left_edges(u)) {
            int v = g.edge(id).v;
            int w = match_r[v];
            if (w == -1 || (dist[w] == dist[u] + 1 && dfs(w))) {
                match_l[u] = v;
                match_r[v] = u;
                return true;
            }
        }
        dist[u] = kInf;
        return false;
    }
};

} // namespace

Matching hopcroft_karp(const BipartiteGraph& g) {
    HK hk(g);
    while (hk.bfs())
        for (int u = 0; u < g.n(); ++u)
            if (hk.match_l[u] == -1) hk.dfs(u);
    Matching m;
    for (int u = 0; u < g.n(); ++u)
        if (hk.match_l[u] != -1) m.push_back(*g.edge_id(u, hk.match_l[u]));
    std::sort(m.begin(), m.end());
    return m;
}

} // namespace clmatch
