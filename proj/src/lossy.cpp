#include "clmatch/lossy.hpp"

#include <algorithm>

#include "clmatch/residual.hpp"
#include "clmatch/util.hpp"

namespace clmatch {

namespace {

constexpr int kMaxExhaustiveBits = 24;

std::vector<std::int64_t> decode_weights(const BipartiteGraph& g, const BitVec& x,
                                         const LossyWidths& w) {
    std::vector<std::int64_t> out(g.m());
    for (int i = 0; i < g.m(); ++i)
        out[i] = static_cast<std::int64_t>(
            x.read_field(static_cast<std::size_t>(i) * w.full_bits, w.full_bits));
    return out;
}

void require_edges(const BipartiteGraph& g) {
    if (g.m() == 0) throw InputError("lossy: graph has no edges, f(n) = 0 is degenerate");
}

} // namespace

LossyWidths lossy_widths(int n) {
    LossyWidths w;
    w.k_bits = ceil_log2(n + 1);
    w.vertex_bits = ceil_log2(n);
    w.rec_bits = w.k_bits + 2 * w.vertex_bits;
    w.full_bits = w.rec_bits + 1;
    return w;
}

LossyInstance make_lossy_instance(const BipartiteGraph& g) {
    LossyInstance inst{g, lossy_widths(g.n()), 0};
    inst.f = static_cast<std::size_t>(g.m()) * inst.widths.full_bits;
    return inst;
}

BitVec lossy_comp(const BipartiteGraph& g, const BitVec& x, Backend backend) {
    require_edges(g);
    LossyWidths wd = lossy_widths(g.n());
    std::size_t f = static_cast<std::size_t>(g.m()) * wd.full_bits;
    if (x.size() != f)
        throw InputError("lossy_comp: expected " + std::to_string(f) + " bits, got " +
                         std::to_string(x.size()));

    // n=1 degenerates: the edge-id record has zero bits and at most one
    // matching of each size exists, so nothing is ever compressible.
    if (g.n() == 1) return BitVec::zeros(f - 1);

    std::vector<std::int64_t> w = decode_weights(g, x, wd);

    // Ascending scan visits k only while isolation holds, so the first
    // threshold it sees is the minimal compressible level.
    for (int k = 0; k <= g.n(); ++k) {
        IsolationOutcome outcome = check_k_plus_1(g, k, w, backend);
        if (outcome.verdict == IsolationVerdict::Bot) break;
        if (outcome.verdict == IsolationVerdict::Isolated) continue;
        int e = *outcome.threshold_edge;
        Edge edge = g.edge(e);
        BitVec y;
        for (int i = 0; i < g.m(); ++i) {
            if (i == e) continue;
            y.append_field(wd.full_bits, static_cast<std::uint64_t>(w[i]));
        }
        y.append_field(wd.k_bits, static_cast<std::uint64_t>(k));
        y.append_field(wd.vertex_bits, static_cast<std::uint64_t>(edge.u));
        y.append_field(wd.vertex_bits, static_cast<std::uint64_t>(edge.v));
        if (y.size() != f - 1) throw InternalError("lossy_comp: output length mismatch");
        return y;
    }
    return BitVec::zeros(f - 1);
}

BitVec lossy_decomp(const BipartiteGraph& g, const BitVec& y, Backend backend) {
    require_edges(g);
    LossyWidths wd = lossy_widths(g.n());
    std::size_t f = static_cast<std::size_t>(g.m()) * wd.full_bits;
    if (y.size() != f - 1)
        throw InputError("lossy_decomp: expected " + std::to_string(f - 1) + " bits, got " +
                         std::to_string(y.size()));
    BitVec zeros = BitVec::zeros(f);
    if (g.n() == 1) return zeros;

    std::size_t rec_off = y.size() - wd.rec_bits;
    int k = static_cast<int>(y.read_field(rec_off, wd.k_bits));
    int u = static_cast<int>(y.read_field(rec_off + wd.k_bits, wd.vertex_bits));
    int v = static_cast<int>(y.read_field(rec_off + wd.k_bits + wd.vertex_bits, wd.vertex_bits));
    if (k > g.n() || u >= g.n() || v >= g.n()) return zeros;
    std::optional<int> e = g.edge_id(u, v);
    if (!e) return zeros;

    // Remaining fields are the other edges' weights in canonical order; a
    // dummy value sits at e, ignored by recover_weight.
    std::vector<std::int64_t> w(g.m(), 0);
    std::size_t off = 0;
    for (int i = 0; i < g.m(); ++i) {
        if (i == *e) continue;
        w[i] = static_cast<std::int64_t>(y.read_field(off, wd.full_bits));
        off += wd.full_bits;
    }

    std::int64_t recovered;
    try {
        recovered = recover_weight(g, k, w, *e, backend);
    } catch (const PromiseViolation&) {
        return zeros;
    } catch (const InternalError&) {
        return zeros;
    }
    if (recovered < 0 || recovered >= (std::int64_t{1} << wd.full_bits)) return zeros;

    w[*e] = recovered;
    BitVec x;
    for (int i = 0; i < g.m(); ++i)
        x.append_field(wd.full_bits, static_cast<std::uint64_t>(w[i]));
    return x;
}

bool lossy_roundtrip_ok(const BipartiteGraph& g, const BitVec& x, Backend backend) {
    return lossy_decomp(g, lossy_comp(g, x, backend), backend) == x;
}

Matching a2_extract(const BipartiteGraph& g, const BitVec& x, Backend backend) {
    if (g.m() == 0) return {};
    LossyWidths wd = lossy_widths(g.n());
    std::size_t f = static_cast<std::size_t>(g.m()) * wd.full_bits;
    if (x.size() != f)
        throw InputError("a2_extract: expected " + std::to_string(f) + " bits, got " +
                         std::to_string(x.size()));
    if (lossy_roundtrip_ok(g, x, backend))
        throw ContractViolation("a2_extract: compression roundtrips on this string, the "
                                "decompression-failure promise is false");

    std::vector<std::int64_t> w = decode_weights(g, x, wd);
    Matching best;
    for (int k = 0; k <= g.n(); ++k) {
        try {
            Matching m = extract_isolated_size_k(g, k, w, backend);
            if (validate_matching(g, m) && static_cast<int>(m.size()) == k) best = m;
        } catch (const PromiseViolation&) {
            // not isolated at this size; larger sizes may still be
        }
    }
    return best;
}

LossySolveResult lossy_solve(const BipartiteGraph& g, LossySolveMode mode, long samples,
                             std::uint64_t seed, Backend backend) {
    require_edges(g);
    LossyInstance inst = make_lossy_instance(g);
    if (mode == LossySolveMode::Exhaustive) {
        if (inst.f > kMaxExhaustiveBits)
            throw InputError("lossy_solve: 2^" + std::to_string(inst.f) +
                             " strings is beyond exhaustive mode; use random");
        BitVec x = BitVec::zeros(inst.f);
        long total = 1L << inst.f;
        for (long i = 0; i < total; ++i, x.increment())
            if (!lossy_roundtrip_ok(g, x, backend)) return {x, i + 1};
        throw InternalError("lossy_solve: exhaustive scan found no witness; pigeonhole violated");
    }
    for (long i = 0; i < samples; ++i) {
        BitVec x = BitVec::from_seed(mix_seed(seed, static_cast<std::uint64_t>(i)), inst.f);
        if (!lossy_roundtrip_ok(g, x, backend)) return {x, i + 1};
    }
    throw InternalError("lossy_solve: no witness in " + std::to_string(samples) +
                        " random samples");
}

} // namespace clmatch
