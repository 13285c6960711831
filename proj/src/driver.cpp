#include "clmatch/driver.hpp"

#include <algorithm>
#include <limits>

#include "clmatch/hopcroft_karp.hpp"
#include "clmatch/residual.hpp"

namespace clmatch {

namespace {

void check_config(const BipartiteGraph& g, const CatalyticTape& tape, const DriverConfig& cfg) {
    const TapeLayout& l = tape.layout();
    if (l.n != g.n() || l.num_weights != g.m())
        throw InputError("driver: tape layout does not match the graph");
    if (cfg.fallback_threshold > l.num_reserves)
        throw InputError("driver: fallback_threshold exceeds num_reserves");
    if (!cfg.input_weights.empty()) {
        if (static_cast<int>(cfg.input_weights.size()) != g.m())
            throw InputError("driver: input weight vector length mismatch");
        if (cfg.input_scale < 1) throw InputError("driver: input_scale must be positive");
        std::int64_t maxw = (std::int64_t{1} << l.weight_bits) - 1;
        for (std::int64_t x : cfg.input_weights) {
            if (x < 0) throw InputError("driver: negative input weight");
            if (x > (std::numeric_limits<std::int64_t>::max() - maxw) / cfg.input_scale)
                throw InputError("driver: input weights overflow the combined range");
        }
    }
}

int effective_fallback_threshold(const CatalyticTape& tape, const DriverConfig& cfg) {
    return cfg.fallback_threshold >= 0 ? cfg.fallback_threshold : tape.layout().num_reserves;
}

Matching run_fallback(const BipartiteGraph& g, const DriverConfig& cfg) {
    Matching m = cfg.fallback ? cfg.fallback(g) : fallback_direct(g);
    if (!validate_matching(g, m)) throw InternalError("driver: fallback returned a non-matching");
    return m;
}

std::string edge_str(const BipartiteGraph& g, int id) {
    Edge e = g.edge(id);
    return "(" + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
}

} // namespace

std::vector<std::int64_t> effective_weights(const CatalyticTape& tape, const DriverConfig& cfg) {
    WeightAssignment cat = tape.read_weights();
    if (cfg.input_weights.empty()) return cat.w;
    std::vector<std::int64_t> w(cat.w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        w[i] = cfg.input_scale * cfg.input_weights[i] + cat.w[i];
    return w;
}

CompressionRecord comp(CatalyticTape& tape, const BipartiteGraph& g, int k, int c,
                       const DriverConfig& cfg) {
    check_config(g, tape, cfg);
    if (c < 0 || c >= tape.layout().num_reserves)
        throw InputError("comp: reserve index out of range");

    std::vector<std::int64_t> w = effective_weights(tape, cfg);
    IsolationOutcome outcome = check_k_plus_1(g, k, w, cfg.backend, cfg.coarse_scale);
    if (outcome.verdict != IsolationVerdict::Threshold)
        throw ContractViolation("comp: no threshold edge at k=" + std::to_string(k) +
                                "; weights isolate (or the matching is maximum)");
    int e = *outcome.threshold_edge;

    std::int64_t reserve = tape.read_reserve_raw(c);
    Edge edge = g.edge(e);
    tape.write_weight(e, reserve);
    tape.write_record(c, PackedRecord{k, edge.u, edge.v});
    tape.account_free(tape.layout().padding_bits());
    return CompressionRecord{c, k, e, c};
}

void decomp(CatalyticTape& tape, const BipartiteGraph& g, int slot, const DriverConfig& cfg) {
    check_config(g, tape, cfg);
    if (slot < 0 || slot >= tape.layout().num_reserves)
        throw InputError("decomp: reserve index out of range");

    bool padding_ok = false;
    PackedRecord rec = tape.read_record(slot, &padding_ok);
    if (!padding_ok)
        throw ContractViolation("decomp: nonzero padding in slot " + std::to_string(slot) +
                                "; slot does not hold a compression record");
    if (rec.k > g.n())
        throw ContractViolation("decomp: recorded k out of range");
    std::optional<int> e = g.edge_id(rec.u, rec.v);
    if (!e) throw ContractViolation("decomp: recorded edge is not in the graph");

    std::vector<std::int64_t> w = effective_weights(tape, cfg);
    std::int64_t combined;
    try {
        combined = recover_weight(g, rec.k, w, *e, cfg.backend, cfg.coarse_scale);
    } catch (const PromiseViolation& ex) {
        throw ContractViolation(std::string("decomp: reconstruction failed: ") + ex.what());
    }

    std::int64_t catalytic = combined;
    if (!cfg.input_weights.empty()) catalytic -= cfg.input_scale * cfg.input_weights[*e];
    std::int64_t field_max = (std::int64_t{1} << tape.layout().weight_bits) - 1;
    if (catalytic < 0 || catalytic > field_max)
        throw TapeCorruption("decomp: recovered weight " + std::to_string(catalytic) +
                             " does not fit the weight field");

    std::int64_t reserve = tape.read_weight(*e);
    tape.write_weight(*e, catalytic);
    tape.write_reserve_raw(slot, reserve);
    tape.account_free(-tape.layout().padding_bits());
}

Matching fallback_direct(const BipartiteGraph& g) { return hopcroft_karp(g); }

RunReport run_clp_match(const BipartiteGraph& g, CatalyticTape& tape, const DriverConfig& cfg) {
    check_config(g, tape, cfg);
    int threshold = effective_fallback_threshold(tape, cfg);

    RunReport rep;
    auto trace = [&](const std::string& s) {
        if (cfg.record_trace) rep.trace.push_back(s);
    };

    std::vector<CompressionRecord> records;
    Matching result;
    int k = 0, c = 0;

    if (cfg.force_fallback) {
        result = run_fallback(g, cfg);
        rep.fallback_fired = true;
        trace("fallback forced, size=" + std::to_string(result.size()));
    } else {
        // Hard bound on loop iterations: k moves at most n+1 times between
        // comps and comps are capped by the threshold.
        long guard = static_cast<long>(threshold + 2) * (g.n() + 2) + 4;
        while (true) {
            if (--guard < 0) throw InternalError("driver: loop failed to terminate");
            std::vector<std::int64_t> w = effective_weights(tape, cfg);
            if (cfg.isolation_hook) cfg.isolation_hook(g, k, w);
            IsolationOutcome outcome = check_k_plus_1(g, k, w, cfg.backend, cfg.coarse_scale);
            if (outcome.verdict == IsolationVerdict::Bot) {
                result = outcome.m_k;
                trace("check k=" + std::to_string(k) + " -> bot, emit size=" +
                      std::to_string(result.size()));
                break;
            }
            if (outcome.verdict == IsolationVerdict::Isolated) {
                trace("check k=" + std::to_string(k) + " -> isolated");
                ++k;
                continue;
            }
            if (c == threshold) {
                result = run_fallback(g, cfg);
                rep.fallback_fired = true;
                trace("check k=" + std::to_string(k) + " -> threshold " +
                      edge_str(g, *outcome.threshold_edge) + ", budget exhausted, fallback size=" +
                      std::to_string(result.size()));
                break;
            }
            CompressionRecord r = comp(tape, g, k, c, cfg);
            records.push_back(r);
            trace("comp c=" + std::to_string(c) + " k=" + std::to_string(k) + " e=" +
                  edge_str(g, r.e));
            ++c;
            k = 0;
        }
    }

    rep.compressions = static_cast<int>(records.size());
    for (auto it = records.rbegin(); it != records.rend(); ++it) {
        decomp(tape, g, it->slot, cfg);
        trace("decomp slot=" + std::to_string(it->slot));
    }

    if (!validate_matching(g, result))
        throw InternalError("driver: emitted edge set is not a matching");
    rep.matching = std::move(result);
    rep.size = static_cast<int>(rep.matching.size());
    rep.tape_restored = tape.restore_check();
    rep.freed_bits_peak = tape.freed_bits_peak();
    if (tape.freed_bits() != 0)
        throw InternalError("driver: freed-bit accounting did not return to zero");
    if (!cfg.input_weights.empty())
        rep.input_weight = matching_weight(rep.matching, cfg.input_weights);
    return rep;
}

} // namespace clmatch
