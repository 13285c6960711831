#include "clmatch/oracle.hpp"

#include <algorithm>

namespace clmatch {
namespace oracle {

namespace {

void check_size(const BipartiteGraph& g) {
    if (g.n() > kMaxOracleN)
        throw InputError("oracle: n=" + std::to_string(g.n()) + " exceeds brute-force cap of " +
                         std::to_string(kMaxOracleN));
}

// Recursive enumeration over edge ids in canonical order. Visits every
// matching exactly once (each matching is the set of ids it picks).
template <typename Visit>
void enumerate(const BipartiteGraph& g, int from, std::vector<char>& left,
               std::vector<char>& right, Matching& cur, Visit&& visit) {
    visit(static_cast<const Matching&>(cur));
    for (int id = from; id < g.m(); ++id) {
        Edge e = g.edge(id);
        if (left[e.u] || right[e.v]) continue;
        left[e.u] = right[e.v] = 1;
        cur.push_back(id);
        enumerate(g, id + 1, left, right, cur, visit);
        cur.pop_back();
        left[e.u] = right[e.v] = 0;
    }
}

template <typename Visit>
void for_each_matching(const BipartiteGraph& g, Visit&& visit) {
    std::vector<char> left(g.n(), 0), right(g.n(), 0);
    Matching cur;
    enumerate(g, 0, left, right, cur, visit);
}

} // namespace

OracleReport brute_force_matchings(const BipartiteGraph& g, const std::vector<std::int64_t>& w,
                                   bool keep_all) {
    check_size(g);
    if (static_cast<int>(w.size()) != g.m())
        throw InputError("oracle: weight vector length mismatch");
    OracleReport rep;
    rep.by_size.resize(g.n() + 1);
    for (int k = 0; k <= g.n(); ++k) rep.by_size[k].k = k;

    for_each_matching(g, [&](const Matching& m) {
        int k = static_cast<int>(m.size());
        SizeClassReport& sc = rep.by_size[k];
        ++sc.matching_count;
        rep.max_size = std::max(rep.max_size, k);
        std::int64_t wt = matching_weight(m, w);
        if (!sc.min_weight || wt < *sc.min_weight) {
            sc.min_weight = wt;
            sc.min_count = 1;
            sc.min_matchings.assign(1, m);
        } else if (wt == *sc.min_weight) {
            ++sc.min_count;
            sc.min_matchings.push_back(m);
        }
        if (keep_all) rep.all_matchings.push_back(m);
    });

    for (auto& sc : rep.by_size) sc.isolated = (sc.min_count == 1);
    return rep;
}

bool is_isolating(const BipartiteGraph& g, int k, const std::vector<std::int64_t>& w) {
    check_size(g);
    if (k < 0 || k > g.n()) return false;
    if (static_cast<int>(w.size()) != g.m())
        throw InputError("oracle: weight vector length mismatch");
    std::int64_t best = 0, count = 0;
    for_each_matching(g, [&](const Matching& m) {
        if (static_cast<int>(m.size()) != k) return;
        std::int64_t wt = matching_weight(m, w);
        if (count == 0 || wt < best) {
            best = wt;
            count = 1;
        } else if (wt == best) {
            ++count;
        }
    });
    return count == 1;
}

std::optional<Matching> unique_min_matching(const BipartiteGraph& g, int k,
                                            const std::vector<std::int64_t>& w) {
    check_size(g);
    if (k < 0 || k > g.n()) return std::nullopt;
    std::int64_t best = 0, count = 0;
    Matching arg;
    for_each_matching(g, [&](const Matching& m) {
        if (static_cast<int>(m.size()) != k) return;
        std::int64_t wt = matching_weight(m, w);
        if (count == 0 || wt < best) {
            best = wt;
            count = 1;
            arg = m;
        } else if (wt == best) {
            ++count;
        }
    });
    if (count != 1) return std::nullopt;
    return arg;
}

int max_matching_size(const BipartiteGraph& g) {
    check_size(g);
    int best = 0;
    for_each_matching(g, [&](const Matching& m) {
        best = std::max(best, static_cast<int>(m.size()));
    });
    return best;
}

std::pair<std::int64_t, Matching> min_weight_max_matching_exhaustive(
    const BipartiteGraph& g, const std::vector<std::int64_t>& w) {
    check_size(g);
    if (static_cast<int>(w.size()) != g.m())
        throw InputError("oracle: weight vector length mismatch");
    int best_size = -1;
    std::int64_t best_w = 0;
    Matching arg;
    for_each_matching(g, [&](const Matching& m) {
        int k = static_cast<int>(m.size());
        std::int64_t wt = matching_weight(m, w);
        if (k > best_size || (k == best_size && wt < best_w)) {
            best_size = k;
            best_w = wt;
            arg = m;
        }
    });
    return {best_w, arg};
}

} // namespace oracle
} // namespace clmatch
