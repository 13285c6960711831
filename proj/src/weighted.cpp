#include "clmatch/weighted.hpp"

#include <limits>
#include <utility>

namespace clmatch {

namespace {

// Direct scan used by the fallback route: every matching, max size first,
// then min input weight, ties broken by first enumeration order so the
// result is deterministic.
struct ScanState {
    const BipartiteGraph& g;
    const std::vector<std::int64_t>& w;
    std::vector<char> left_used, right_used;
    Matching cur;
    int best_size = -1;
    std::int64_t best_weight = 0;
    Matching best;
};

void scan(ScanState& s, int next, std::int64_t weight) {
    int size = static_cast<int>(s.cur.size());
    if (size > s.best_size || (size == s.best_size && weight < s.best_weight)) {
        s.best_size = size;
        s.best_weight = weight;
        s.best = s.cur;
    }
    for (int e = next; e < s.g.m(); ++e) {
        Edge edge = s.g.edge(e);
        if (s.left_used[edge.u] || s.right_used[edge.v]) continue;
        s.left_used[edge.u] = 1;
        s.right_used[edge.v] = 1;
        s.cur.push_back(e);
        scan(s, e + 1, weight + s.w[e]);
        s.cur.pop_back();
        s.left_used[edge.u] = 0;
        s.right_used[edge.v] = 0;
    }
}

Matching min_input_scan(const BipartiteGraph& g, const std::vector<std::int64_t>& w) {
    ScanState s{g, w, std::vector<char>(g.n(), 0), std::vector<char>(g.n(), 0), {}, -1, 0, {}};
    scan(s, 0, 0);
    return s.best;
}

} // namespace

std::int64_t input_scale_for(const BipartiteGraph& g, const TapeLayout& layout) {
    unsigned __int128 max_field = (static_cast<unsigned __int128>(1) << layout.weight_bits) - 1;
    unsigned __int128 k = max_field * static_cast<unsigned>(g.m()) + 1;
    if (k > static_cast<unsigned __int128>(std::numeric_limits<std::int64_t>::max()))
        throw InputError("weighted: catalytic fields too wide for the input scale factor; "
                         "use a narrower tape");
    return static_cast<std::int64_t>(k);
}

WeightedResult min_weight_max_matching(const BipartiteGraph& g,
                                       const std::vector<std::int64_t>& input_w,
                                       CatalyticTape& tape, DriverConfig cfg) {
    if (static_cast<int>(input_w.size()) != g.m())
        throw InputError("weighted: expected " + std::to_string(g.m()) +
                         " input weights, got " + std::to_string(input_w.size()));
    for (std::int64_t v : input_w)
        if (v < 0) throw InputError("weighted: input weights must be nonnegative");

    cfg.input_weights = input_w;
    cfg.input_scale = input_scale_for(g, tape.layout());
    if (!cfg.fallback) {
        std::vector<std::int64_t> w = input_w;
        cfg.fallback = [w](const BipartiteGraph& gg) { return min_input_scan(gg, w); };
    }

    RunReport rep = run_clp_match(g, tape, cfg);
    WeightedResult res;
    res.matching = rep.matching;
    res.input_weight = rep.input_weight;
    res.report = std::move(rep);
    return res;
}

} // namespace clmatch
