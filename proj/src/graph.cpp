#include "clmatch/graph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace clmatch {

BipartiteGraph::BipartiteGraph(int n, std::vector<Edge> edges) : n_(n) {
    if (n < 1) throw InputError("graph: n must be positive");
    if (n > kMaxN) throw InputError("graph: n exceeds the supported maximum of " +
                                    std::to_string(kMaxN));
    std::sort(edges.begin(), edges.end(),
              [](Edge a, Edge b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
    for (std::size_t i = 0; i < edges.size(); ++i) {
        Edge e = edges[i];
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
            throw InputError("graph: edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                             ") out of range for n=" + std::to_string(n));
        if (i > 0 && edges[i - 1] == e)
            throw InputError("graph: duplicate edge (" + std::to_string(e.u) + "," +
                             std::to_string(e.v) + ")");
    }
    edges_ = std::move(edges);
    left_adj_.assign(n_, {});
    right_adj_.assign(n_, {});
    for (int id = 0; id < m(); ++id) {
        left_adj_[edges_[id].u].push_back(id);
        right_adj_[edges_[id].v].push_back(id);
    }
}

std::optional<int> BipartiteGraph::edge_id(int u, int v) const {
    if (u < 0 || u >= n_ || v < 0 || v >= n_) return std::nullopt;
    for (int id : left_adj_[u])
        if (edges_[id].v == v) return id;
    return std::nullopt;
}

BipartiteGraph BipartiteGraph::without_edge(int id) const {
    if (id < 0 || id >= m()) throw InternalError("without_edge: bad edge id");
    std::vector<Edge> rest;
    rest.reserve(edges_.size() - 1);
    for (int i = 0; i < m(); ++i)
        if (i != id) rest.push_back(edges_[i]);
    return BipartiteGraph(n_, std::move(rest));
}

bool BipartiteGraph::operator==(const BipartiteGraph& o) const {
    if (n_ != o.n_ || edges_.size() != o.edges_.size()) return false;
    for (std::size_t i = 0; i < edges_.size(); ++i)
        if (!(edges_[i] == o.edges_[i])) return false;
    return true;
}

void validate_weights(const BipartiteGraph& g, const WeightAssignment& w) {
    if (static_cast<int>(w.w.size()) != g.m())
        throw InputError("weights: expected " + std::to_string(g.m()) + " values, got " +
                         std::to_string(w.w.size()));
    if (w.bits < 1 || w.bits > 62) throw InputError("weights: field width out of range");
    for (std::int64_t x : w.w)
        if (x < 0 || x >= (std::int64_t{1} << w.bits))
            throw InputError("weights: value " + std::to_string(x) + " outside [0, 2^" +
                             std::to_string(w.bits) + ")");
}

std::int64_t matching_weight(const Matching& m, const std::vector<std::int64_t>& w) {
    std::int64_t total = 0;
    for (int id : m) total += w.at(id);
    return total;
}

bool validate_matching(const BipartiteGraph& g, const Matching& m) {
    std::vector<char> left(g.n(), 0), right(g.n(), 0);
    int prev = -1;
    for (int id : m) {
        if (id < 0 || id >= g.m()) return false;
        if (id <= prev) return false; // sorted, no duplicates
        prev = id;
        Edge e = g.edge(id);
        if (left[e.u] || right[e.v]) return false;
        left[e.u] = right[e.v] = 1;
    }
    return true;
}

EdgeSet symmetric_difference(const EdgeSet& a, const EdgeSet& b) {
    EdgeSet out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                  std::back_inserter(out));
    return out;
}

EdgeSet xor_apply(const EdgeSet& m, const EdgeSet& s) { return symmetric_difference(m, s); }

namespace {

bool contains(const EdgeSet& s, int id) {
    return std::binary_search(s.begin(), s.end(), id);
}

} // namespace

std::vector<Component> classify_components(const BipartiteGraph& g, const EdgeSet& h,
                                           const Matching& m1, const Matching& m2) {
    if (!validate_matching(g, m1) || !validate_matching(g, m2))
        throw InputError("classify_components: M1/M2 are not valid matchings");
    if (symmetric_difference(m1, m2) != h)
        throw InputError("classify_components: H is not M1 symdiff M2");

    // Vertices 0..n-1 are left, n..2n-1 are right.
    int nv = 2 * g.n();
    std::vector<std::vector<int>> at(nv);
    for (int id : h) {
        Edge e = g.edge(id);
        at[e.u].push_back(id);
        at[g.n() + e.v].push_back(id);
    }
    for (int v = 0; v < nv; ++v)
        if (at[v].size() > 2)
            throw InternalError("classify_components: vertex of degree > 2 in H");

    std::vector<char> seen(g.m(), 0);
    std::vector<Component> out;
    for (int start : h) {
        if (seen[start]) continue;
        // Walk the component edge by edge; start from an endpoint of degree 1
        // if the component is a path.
        EdgeSet comp;
        std::vector<int> stack = {start};
        seen[start] = 1;
        while (!stack.empty()) {
            int id = stack.back();
            stack.pop_back();
            comp.push_back(id);
            Edge e = g.edge(id);
            for (int v : {e.u, g.n() + e.v})
                for (int other : at[v])
                    if (!seen[other]) {
                        seen[other] = 1;
                        stack.push_back(other);
                    }
        }
        std::sort(comp.begin(), comp.end());

        int deg1 = 0;
        std::vector<int> degree(nv, 0);
        for (int id : comp) {
            Edge e = g.edge(id);
            ++degree[e.u];
            ++degree[g.n() + e.v];
        }
        for (int v = 0; v < nv; ++v)
            if (degree[v] == 1) ++deg1;

        int in1 = 0, in2 = 0;
        for (int id : comp) {
            bool a = contains(m1, id), b = contains(m2, id);
            if (a == b) throw InternalError("classify_components: H edge not in exactly one side");
            (a ? in1 : in2) += 1;
        }

        ComponentKind kind;
        if (deg1 == 0) {
            if (in1 != in2) throw InternalError("classify_components: cycle does not alternate");
            kind = ComponentKind::EvenAlternatingCycle;
        } else if (deg1 == 2) {
            if (in1 == in2) kind = ComponentKind::EvenAlternatingPath;
            else if (in2 == in1 + 1) kind = ComponentKind::AugmentingWrtM1;
            else if (in1 == in2 + 1) kind = ComponentKind::AugmentingWrtM2;
            else throw InternalError("classify_components: path does not alternate");
        } else {
            throw InternalError("classify_components: component is neither path nor cycle");
        }
        out.push_back(Component{kind, std::move(comp)});
    }
    return out;
}

BipartiteGraph read_graph(std::istream& in) {
    int n, m;
    if (!(in >> n >> m)) throw InputError("graph file: expected header 'n m'");
    if (m < 0) throw InputError("graph file: negative edge count");
    std::vector<Edge> edges;
    edges.reserve(m);
    for (int i = 0; i < m; ++i) {
        int u, v;
        if (!(in >> u >> v))
            throw InputError("graph file: expected " + std::to_string(m) + " edges, got " +
                             std::to_string(i));
        edges.push_back(Edge{u, v});
    }
    std::string extra;
    if (in >> extra) throw InputError("graph file: trailing content after edge list");
    return BipartiteGraph(n, std::move(edges));
}

BipartiteGraph read_graph_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open graph file: " + path);
    return read_graph(f);
}

std::string format_graph(const BipartiteGraph& g) {
    std::ostringstream out;
    out << g.n() << ' ' << g.m() << '\n';
    for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
    return out.str();
}

std::vector<std::int64_t> read_weight_file(const std::string& path, const BipartiteGraph& g) {
    std::ifstream f(path);
    if (!f) throw InputError("cannot open weight file: " + path);
    std::vector<std::int64_t> w;
    std::int64_t x;
    while (f >> x) w.push_back(x);
    if (static_cast<int>(w.size()) != g.m())
        throw InputError("weight file: expected " + std::to_string(g.m()) + " values, got " +
                         std::to_string(w.size()));
    for (std::int64_t v : w)
        if (v < 0) throw InputError("weight file: negative weight");
    return w;
}

} // namespace clmatch
