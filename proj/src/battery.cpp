#include "clmatch/battery.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>

#include "clmatch/driver.hpp"
#include "clmatch/generate.hpp"
#include "clmatch/graph.hpp"
#include "clmatch/isolation.hpp"
#include "clmatch/lossy.hpp"
#include "clmatch/oracle.hpp"
#include "clmatch/residual.hpp"
#include "clmatch/tape.hpp"
#include "clmatch/util.hpp"
#include "clmatch/weighted.hpp"

namespace clmatch {

SweepOutcome sweep_instances(long total, bool serial,
                             const std::function<std::string(long)>& body) {
    auto guarded = [&body](long i) -> std::string {
        try {
            return body(i);
        } catch (const std::exception& ex) {
            return std::string("unexpected exception: ") + ex.what();
        } catch (...) {
            return "unexpected non-standard exception";
        }
    };
    if (serial) {
        for (long i = 0; i < total; ++i) {
            std::string msg = guarded(i);
            if (!msg.empty()) return {false, i, msg};
        }
        return {true, -1, ""};
    }
    long fail_idx = -1;
    std::string fail_msg;
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < total; ++i) {
        std::string msg = guarded(i);
        if (!msg.empty()) {
#pragma omp critical(clmatch_sweep_fail)
            {
                if (fail_idx < 0 || i < fail_idx) {
                    fail_idx = i;
                    fail_msg = msg;
                }
            }
        }
    }
    if (fail_idx >= 0) return {false, fail_idx, fail_msg};
    return {true, -1, ""};
}

namespace {

// --- shared helpers -------------------------------------------------------

std::uint64_t rnd(std::uint64_t& state, std::uint64_t bound) {
    return splitmix64(state) % bound;
}

BipartiteGraph random_graph(std::uint64_t& state, int n, double p) {
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (static_cast<double>(splitmix64(state) >> 11) < p * 9007199254740992.0)
                edges.push_back({u, v});
    return BipartiteGraph(n, edges);
}

std::vector<std::int64_t> random_weights(std::uint64_t& state, int m, std::uint64_t range) {
    std::vector<std::int64_t> w(m);
    for (int i = 0; i < m; ++i) w[i] = static_cast<std::int64_t>(rnd(state, range));
    return w;
}

BitVec all_ones(std::size_t len) {
    BitVec v(len);
    for (std::size_t i = 0; i < len; ++i) v.set(i, true);
    return v;
}

std::string edges_str(const BipartiteGraph& g) {
    std::string s = "[";
    for (int id = 0; id < g.m(); ++id) {
        Edge e = g.edge(id);
        s += (id ? ",(" : "(") + std::to_string(e.u) + "," + std::to_string(e.v) + ")";
    }
    return s + "]";
}

std::string weights_str(const std::vector<std::int64_t>& w) {
    std::string s = "[";
    for (std::size_t i = 0; i < w.size(); ++i)
        s += (i ? "," : "") + std::to_string(w[i]);
    return s + "]";
}

std::string inst_str(const BipartiteGraph& g, int k, const std::vector<std::int64_t>& w) {
    return "n=" + std::to_string(g.n()) + " edges=" + edges_str(g) + " k=" + std::to_string(k) +
           " w=" + weights_str(w);
}

CriterionResult make_result(int id, const std::string& name) {
    CriterionResult r;
    r.id = id;
    r.name = name;
    return r;
}

void finish(CriterionResult& r, const SweepOutcome& s, long checked,
            const std::string& pass_note) {
    r.checked = checked;
    if (s.ok) {
        r.passed = true;
        r.detail = pass_note;
    } else {
        r.passed = false;
        r.detail = "index " + std::to_string(s.first_fail) + ": " + s.message;
    }
}

// --- criterion 1: full n=3 graph sweep against the oracle ------------------

std::string run_and_compare(const BipartiteGraph& g, CatalyticTape& tape,
                            const DriverConfig& cfg) {
    RunReport rep = run_clp_match(g, tape, cfg);
    int want = oracle::max_matching_size(g);
    if (rep.size != want)
        return "driver returned size " + std::to_string(rep.size) + ", oracle max is " +
               std::to_string(want) + " on edges=" + edges_str(g);
    if (!validate_matching(g, rep.matching)) return "driver matching invalid on " + edges_str(g);
    if (!rep.tape_restored || !tape.restore_check())
        return "tape not restored on edges=" + edges_str(g);
    return "";
}

CriterionResult crit1(const BatteryOptions& o) {
    auto r = make_result(1, "driver matches oracle on every n=3 graph");
    const long tapes = o.quick ? 6 : 52;
    const long total = 512 * tapes;
    auto s = sweep_instances(total, o.serial, [&](long i) -> std::string {
        std::uint64_t mask = static_cast<std::uint64_t>(i / tapes);
        long t = i % tapes;
        BipartiteGraph g = graph_from_mask(3, mask);
        TapeLayout layout = TapeLayout::for_graph(g);
        BitVec bits = t == 0   ? BitVec::zeros(layout.total_bits())
                      : t == 1 ? all_ones(layout.total_bits())
                               : BitVec::from_seed(mix_seed(o.seed, 0xC1000000 + i),
                                                   layout.total_bits());
        CatalyticTape tape(layout, bits);
        std::string msg = run_and_compare(g, tape, {});
        if (!msg.empty()) msg += " (mask=" + std::to_string(mask) + " tape=" + std::to_string(t) + ")";
        return msg;
    });
    finish(r, s, total, std::to_string(total) + " runs");
    return r;
}

// --- criterion 2: compression fires and frees exactly the padding ----------

CriterionResult crit2(const BatteryOptions& o) {
    auto r = make_result(2, "compression fires and frees exact padding");
    const long crafted = o.quick ? 30 : 120;
    const long total = 1 + crafted;
    auto s = sweep_instances(total, o.serial, [&](long i) -> std::string {
        BipartiteGraph g(1, {});
        TapeLayout layout;
        BitVec bits;
        if (i == 0) {
            g = graph_from_mask(2, 0xF); // K_{2,2}
            layout = TapeLayout::for_graph(g);
            bits = BitVec::zeros(layout.total_bits());
        } else {
            GenSpec spec;
            spec.family = Family::CraftedNonisolating;
            spec.n = 2 + static_cast<int>((i - 1) % 4);
            spec.seed = mix_seed(o.seed, 0xC2000000 + i);
            GeneratedInstance inst = generate(spec);
            g = inst.g;
            layout = inst.layout;
            bits = inst.tape_bits;
        }
        CatalyticTape tape(layout, bits);
        RunReport rep = run_clp_match(g, tape, {});
        if (rep.compressions < 1)
            return "no compression fired on edges=" + edges_str(g) + " i=" + std::to_string(i);
        if (rep.freed_bits_peak != rep.compressions * layout.padding_bits())
            return "freed-bit peak " + std::to_string(rep.freed_bits_peak) + " != " +
                   std::to_string(rep.compressions) + " comps * " +
                   std::to_string(layout.padding_bits()) + " padding bits";
        if (!rep.tape_restored || !tape.restore_check()) return "tape not restored";
        if (rep.size != oracle::max_matching_size(g))
            return "wrong matching size on edges=" + edges_str(g);
        return "";
    });
    finish(r, s, total, std::to_string(total) + " instances, all compressed");
    return r;
}

// --- criterion 3: determinant vs combinatorial vs oracle -------------------

std::string check_backends(const BipartiteGraph& g, int k, const std::vector<std::int64_t>& w) {
    oracle::OracleReport rep = oracle::brute_force_matchings(g, w);
    const oracle::SizeClassReport& sc = rep.by_size[k];
    Matching comb, det;
    bool comb_pv = false, det_pv = false;
    std::string comb_msg, det_msg;
    try {
        comb = extract_isolated_size_k(g, k, w, Backend::Combinatorial);
    } catch (const PromiseViolation& pv) {
        comb_pv = true;
        comb_msg = pv.what();
    }
    try {
        det = extract_isolated_size_k(g, k, w, Backend::Determinant);
    } catch (const PromiseViolation& pv) {
        det_pv = true;
        det_msg = pv.what();
    }
    if (sc.min_count == 1) {
        if (comb_pv)
            return "combinatorial backend refused an isolating instance (" + comb_msg + ") on " +
                   inst_str(g, k, w);
        if (det_pv)
            return "determinant backend refused an isolating instance (" + det_msg + ") on " +
                   inst_str(g, k, w);
        if (comb != sc.min_matchings[0])
            return "combinatorial result differs from oracle minimum on " + inst_str(g, k, w);
        if (det != sc.min_matchings[0])
            return "determinant result differs from oracle minimum on " + inst_str(g, k, w);
    } else {
        if (!comb_pv)
            return "combinatorial backend accepted a non-isolating instance on " +
                   inst_str(g, k, w);
        if (!det_pv)
            return "determinant backend accepted a non-isolating instance on " +
                   inst_str(g, k, w);
    }
    return "";
}

struct BackendJob {
    int n = 0;
    std::uint64_t mask = 0;
    int k = 0;
    std::uint64_t widx = 0; // exhaustive: base-8 digit vector; sampled: sub-seed
    bool exhaustive = true;
};

CriterionResult crit3(const BatteryOptions& o) {
    auto r = make_result(3, "determinant and combinatorial backends agree");
    const int sampled_per = o.quick ? 8 : 24;
    std::vector<BackendJob> jobs;
    for (int n = 1; n <= 3; ++n) {
        std::uint64_t masks = std::uint64_t{1} << (n * n);
        for (std::uint64_t mask = 0; mask < masks; ++mask) {
            int m = 0;
            for (std::uint64_t b = mask; b; b >>= 1) m += static_cast<int>(b & 1);
            // Weight space [0,7]^m: full enumeration while it stays small,
            // seeded samples beyond that.
            bool exhaustive = (n <= 2) || m <= 2;
            std::uint64_t count = exhaustive ? (std::uint64_t{1} << (3 * m))
                                             : static_cast<std::uint64_t>(sampled_per);
            for (int k = 0; k <= n; ++k)
                for (std::uint64_t widx = 0; widx < count; ++widx)
                    jobs.push_back({n, mask, k, widx, exhaustive});
        }
    }
    long exhaustive_jobs = static_cast<long>(jobs.size());

    auto job_body = [&](long i) -> std::string {
        const BackendJob& job = jobs[i];
        BipartiteGraph g = graph_from_mask(job.n, job.mask);
        std::vector<std::int64_t> w(g.m());
        if (job.exhaustive) {
            for (int j = 0; j < g.m(); ++j) w[j] = (job.widx >> (3 * j)) & 7;
        } else {
            std::uint64_t state = mix_seed(
                o.seed, 0xC3000000ULL ^ (job.mask << 12) ^ (static_cast<std::uint64_t>(job.k) << 6) ^
                            job.widx);
            w = random_weights(state, g.m(), 8);
        }
        return check_backends(g, job.k, w);
    };
    auto s = sweep_instances(exhaustive_jobs, o.serial, job_body);
    if (!s.ok) {
        finish(r, s, exhaustive_jobs, "");
        return r;
    }

    const long randoms = o.quick ? 1000 : 10000;
    auto s2 = sweep_instances(randoms, o.serial, [&](long i) -> std::string {
        std::uint64_t state = mix_seed(o.seed, 0xC3B00000 + i);
        int n = 1 + static_cast<int>(rnd(state, 5));
        BipartiteGraph g = random_graph(state, n, 0.5);
        int k = static_cast<int>(rnd(state, static_cast<std::uint64_t>(n) + 1));
        std::vector<std::int64_t> w = random_weights(state, g.m(), 16);
        return check_backends(g, k, w);
    });
    finish(r, s2, exhaustive_jobs + randoms,
           std::to_string(exhaustive_jobs) + " enumerated + " + std::to_string(randoms) +
               " random instances");
    return r;
}

// --- criterion 4: clique reverse pairing is the strict unique minimum ------

CriterionResult crit4(const BatteryOptions& o) {
    auto r = make_result(4, "clique reverse pairing is the unique minimum");
    const long per_s = o.quick ? 5 : 20;
    const long total = 6 * per_s;
    auto s = sweep_instances(total, o.serial, [&](long i) -> std::string {
        int size = 1 + static_cast<int>(i / per_s);
        std::uint64_t state = mix_seed(o.seed, 0xC4000000 + i);
        // 2*size distinct positive indices, split alternately between sides.
        std::vector<std::int64_t> pool;
        while (static_cast<int>(pool.size()) < 2 * size) {
            std::int64_t v = 1 + static_cast<std::int64_t>(rnd(state, 500));
            if (std::find(pool.begin(), pool.end(), v) == pool.end()) pool.push_back(v);
        }
        std::vector<std::int64_t> left, right;
        for (int j = 0; j < 2 * size; ++j) (j % 2 ? right : left).push_back(pool[j]);
        std::sort(left.begin(), left.end());
        std::sort(right.begin(), right.end());

        std::vector<int> perm(size), best_perm;
        for (int j = 0; j < size; ++j) perm[j] = j;
        std::int64_t best = 0, best_count = 0;
        do {
            std::int64_t wsum = 0;
            for (int j = 0; j < size; ++j) wsum += left[j] * right[perm[j]];
            if (best_count == 0 || wsum < best) {
                best = wsum;
                best_count = 1;
                best_perm = perm;
            } else if (wsum == best) {
                ++best_count;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));

        if (best_count != 1)
            return "minimum clique pairing not unique (count " + std::to_string(best_count) +
                   ") for s=" + std::to_string(size);
        for (int j = 0; j < size; ++j)
            if (best_perm[j] != size - 1 - j)
                return "minimum pairing is not the reverse pairing for s=" + std::to_string(size);
        auto out = clique_unique_matching(left, right);
        for (int j = 0; j < size; ++j)
            if (out[j].first != left[j] || out[j].second != right[size - 1 - j])
                return "clique_unique_matching output differs from the reverse pairing";
        return "";
    });
    finish(r, s, total, std::to_string(total) + " index sets, s in [1,6]");
    return r;
}

// --- criterion 5: M^{k+1} xor M^k is exactly one augmenting path -----------

CriterionResult crit5(const BatteryOptions& o) {
    auto r = make_result(5, "consecutive isolated matchings differ by one augmenting path");
    const long attempts = o.quick ? 1200 : 6000;
    const long need = o.quick ? 200 : 1000;
    std::atomic<long> qualified{0};
    auto s = sweep_instances(attempts, o.serial, [&](long i) -> std::string {
        std::uint64_t state = mix_seed(o.seed, 0xC5000000 + i);
        int n = 2 + static_cast<int>(rnd(state, 4));
        BipartiteGraph g = random_graph(state, n, 0.5);
        int k = static_cast<int>(rnd(state, static_cast<std::uint64_t>(n)));
        std::vector<std::int64_t> w = random_weights(state, g.m(), 32);
        oracle::OracleReport rep = oracle::brute_force_matchings(g, w);
        if (!rep.by_size[k].isolated || !rep.by_size[k + 1].isolated) return "";
        qualified.fetch_add(1, std::memory_order_relaxed);
        const Matching& mk = rep.by_size[k].min_matchings[0];
        const Matching& mk1 = rep.by_size[k + 1].min_matchings[0];
        EdgeSet h = symmetric_difference(mk, mk1);
        std::vector<Component> comps = classify_components(g, h, mk, mk1);
        if (comps.size() != 1)
            return "symmetric difference split into " + std::to_string(comps.size()) +
                   " components on " + inst_str(g, k, w);
        if (comps[0].kind != ComponentKind::AugmentingWrtM1)
            return "component is not an augmenting path w.r.t. the smaller matching on " +
                   inst_str(g, k, w);
        return "";
    });
    long q = qualified.load();
    if (s.ok && q < need) {
        r.checked = q;
        r.passed = false;
        r.detail = "only " + std::to_string(q) + " qualifying instances, need " +
                   std::to_string(need);
        return r;
    }
    finish(r, s, q, std::to_string(q) + " qualifying instances");
    return r;
}

// --- criterion 6: threshold verdicts track oracle isolation ----------------

std::string check_iso_equiv(const BipartiteGraph& g, int k, const std::vector<std::int64_t>& w,
                            std::atomic<long>& qualified) {
    oracle::OracleReport rep = oracle::brute_force_matchings(g, w);
    if (!rep.by_size[k].isolated) return ""; // check's promise needs isolation at k
    qualified.fetch_add(1, std::memory_order_relaxed);
    IsolationOutcome out = check_k_plus_1(g, k, w);
    if (out.m_k != rep.by_size[k].min_matchings[0])
        return "extracted size-k matching differs from oracle minimum on " + inst_str(g, k, w);

    // Isolation at k also forbids nonpositive cycles: one would flip into a
    // second minimum of the same size.
    ResidualGraph res = build_residual(g, out.m_k, w);
    if (!no_nonpositive_cycle(res))
        return "nonpositive residual cycle despite isolation at k on " + inst_str(g, k, w);

    const oracle::SizeClassReport& next = rep.by_size[k + 1];
    if (next.matching_count == 0) {
        if (out.verdict != IsolationVerdict::Bot)
            return "expected Bot (no size-k+1 matching) on " + inst_str(g, k, w);
    } else if (next.min_count == 1) {
        if (out.verdict != IsolationVerdict::Isolated)
            return "oracle isolates at k+1 but check says " +
                   std::string(out.verdict == IsolationVerdict::Bot ? "Bot" : "Threshold") +
                   " on " + inst_str(g, k, w);
    } else {
        if (out.verdict != IsolationVerdict::Threshold)
            return "oracle finds " + std::to_string(next.min_count) +
                   " minima at k+1 but check found no threshold edge on " + inst_str(g, k, w);
        int e = *out.threshold_edge;
        if (e < 0 || e >= g.m()) return "threshold edge id out of range";
        if (std::find(out.m_k.begin(), out.m_k.end(), e) != out.m_k.end())
            return "threshold edge already in M^k on " + inst_str(g, k, w);
    }
    return "";
}

CriterionResult crit6(const BatteryOptions& o) {
    auto r = make_result(6, "threshold verdicts match oracle isolation");
    const int sampled_per = o.quick ? 8 : 24;
    std::atomic<long> qualified{0};

    std::vector<BackendJob> jobs;
    for (int n = 1; n <= 3; ++n) {
        std::uint64_t masks = std::uint64_t{1} << (n * n);
        for (std::uint64_t mask = 0; mask < masks; ++mask) {
            int m = 0;
            for (std::uint64_t b = mask; b; b >>= 1) m += static_cast<int>(b & 1);
            // Weight space [0,3]^m exhaustively while small, samples beyond.
            bool exhaustive = (n <= 2) || m <= 3;
            std::uint64_t count = exhaustive ? (std::uint64_t{1} << (2 * m))
                                             : static_cast<std::uint64_t>(sampled_per);
            for (int k = 0; k < n; ++k)
                for (std::uint64_t widx = 0; widx < count; ++widx)
                    jobs.push_back({n, mask, k, widx, exhaustive});
        }
    }
    long enumerated = static_cast<long>(jobs.size());
    auto s = sweep_instances(enumerated, o.serial, [&](long i) -> std::string {
        const BackendJob& job = jobs[i];
        BipartiteGraph g = graph_from_mask(job.n, job.mask);
        std::vector<std::int64_t> w(g.m());
        if (job.exhaustive) {
            for (int j = 0; j < g.m(); ++j) w[j] = (job.widx >> (2 * j)) & 3;
        } else {
            std::uint64_t state = mix_seed(
                o.seed, 0xC6000000ULL ^ (job.mask << 12) ^ (static_cast<std::uint64_t>(job.k) << 6) ^
                            job.widx);
            w = random_weights(state, g.m(), 8);
        }
        return check_iso_equiv(g, job.k, w, qualified);
    });
    if (!s.ok) {
        finish(r, s, enumerated, "");
        return r;
    }

    const long randoms = o.quick ? 600 : 3000;
    const long need = o.quick ? 200 : 1000;
    std::atomic<long> rand_qualified{0};
    auto s2 = sweep_instances(randoms, o.serial, [&](long i) -> std::string {
        std::uint64_t state = mix_seed(o.seed, 0xC6B00000 + i);
        int n = 1 + static_cast<int>(rnd(state, 5));
        BipartiteGraph g = random_graph(state, n, 0.5);
        int k = static_cast<int>(rnd(state, static_cast<std::uint64_t>(n)));
        std::vector<std::int64_t> w = random_weights(state, g.m(), 32);
        return check_iso_equiv(g, k, w, rand_qualified);
    });
    long rq = rand_qualified.load();
    if (s2.ok && rq < need) {
        r.checked = qualified.load() + rq;
        r.passed = false;
        r.detail = "only " + std::to_string(rq) + " qualifying random instances, need " +
                   std::to_string(need);
        return r;
    }
    finish(r, s2, qualified.load() + rq,
           std::to_string(qualified.load()) + " enumerated + " + std::to_string(rq) +
               " random qualifying instances");
    return r;
}

// --- criterion 7: recovery inverts compression bit-exactly -----------------

CriterionResult crit7(const BatteryOptions& o) {
    auto r = make_result(7, "weight recovery inverts compression bit-exactly");
    const long instances = o.quick ? 60 : 300;
    const long need = o.quick ? 200 : 1000;
    std::atomic<long> events{0};
    auto s = sweep_instances(instances, o.serial, [&](long i) -> std::string {
        std::uint64_t state = mix_seed(o.seed, 0xC7000000 + i);
        int n = 2 + static_cast<int>(rnd(state, 4));
        BipartiteGraph g(1, {});
        BitVec bits;
        TapeLayout layout;
        if (i % 3 == 0) {
            // Zero tape on the complete graph: every reserve substitution
            // keeps the weights all-equal, so the comp budget is drained.
            g = graph_from_mask(n, (std::uint64_t{1} << (n * n)) - 1);
            layout = TapeLayout::for_graph(g);
            bits = BitVec::zeros(layout.total_bits());
        } else {
            GenSpec spec;
            spec.family = Family::CraftedNonisolating;
            spec.n = n;
            spec.seed = mix_seed(o.seed, 0xC7100000 + i);
            GeneratedInstance inst = generate(spec);
            g = inst.g;
            layout = inst.layout;
            bits = inst.tape_bits;
        }
        CatalyticTape tape(layout, bits);

        struct Saved {
            int slot;
            BitVec pre;
        };
        std::vector<Saved> stack;
        int k = 0, c = 0;
        long guard = static_cast<long>(layout.num_reserves + 2) * (g.n() + 2) + 4;
        while (guard-- > 0) {
            std::vector<std::int64_t> w = tape.read_weights().w;
            IsolationOutcome out = check_k_plus_1(g, k, w);
            if (out.verdict == IsolationVerdict::Bot) break;
            if (out.verdict == IsolationVerdict::Isolated) {
                ++k;
                continue;
            }
            if (c == layout.num_reserves) break;
            int e = *out.threshold_edge;
            std::int64_t erased = tape.read_weight(e);
            BitVec pre = tape.bits();
            CompressionRecord rec = comp(tape, g, k, c);
            if (rec.e != e || rec.slot != c)
                return "comp picked a different edge or slot than the check";
            std::vector<std::int64_t> w_after = tape.read_weights().w;
            std::int64_t got = recover_weight(g, k, w_after, e);
            if (got != erased)
                return "recover_weight returned " + std::to_string(got) + ", erased value was " +
                       std::to_string(erased) + " on " + inst_str(g, k, w);
            events.fetch_add(1, std::memory_order_relaxed);
            stack.push_back({rec.slot, std::move(pre)});
            ++c;
            k = 0;
        }
        if (guard <= 0) return "compression loop exceeded its bound on edges=" + edges_str(g);
        if (tape.freed_bits_peak() != c * layout.padding_bits())
            return "freed-bit peak mismatch: " + std::to_string(tape.freed_bits_peak()) +
                   " != " + std::to_string(c) + " * " + std::to_string(layout.padding_bits());
        for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
            decomp(tape, g, it->slot);
            if (tape.bits() != it->pre)
                return "decomp did not restore the exact pre-comp tape (slot " +
                       std::to_string(it->slot) + ")";
        }
        if (!tape.restore_check()) return "tape differs from snapshot after full unwind";
        if (tape.freed_bits() != 0) return "freed-bit accounting did not return to zero";
        return "";
    });
    long ev = events.load();
    if (s.ok && ev < need) {
        r.checked = ev;
        r.passed = false;
        r.detail =
            "only " + std::to_string(ev) + " compression events, need " + std::to_string(need);
        return r;
    }
    finish(r, s, ev, std::to_string(ev) + " compression events verified");
    return r;
}

// --- criterion 8: lossy dichotomy and the solve pipeline -------------------

std::string check_dichotomy(const BipartiteGraph& g, const BitVec& x, int oracle_max) {
    bool rt = lossy_roundtrip_ok(g, x);
    enum { ThrewContract, ReturnedValidMax, ReturnedBad } a2;
    try {
        Matching m = a2_extract(g, x);
        a2 = (validate_matching(g, m) && static_cast<int>(m.size()) == oracle_max)
                 ? ReturnedValidMax
                 : ReturnedBad;
    } catch (const ContractViolation&) {
        a2 = ThrewContract;
    }
    if (rt && a2 != ThrewContract)
        return "roundtrip succeeds but a2 accepted the string x=" + x.to_hex();
    if (!rt && a2 == ThrewContract)
        return "roundtrip fails but a2 rejected the promise on x=" + x.to_hex();
    if (!rt && a2 == ReturnedBad)
        return "a2 returned a non-maximum matching on x=" + x.to_hex();
    return "";
}

CriterionResult crit8(const BatteryOptions& o) {
    auto r = make_result(8, "lossy roundtrip dichotomy");
    struct Shape {
        int n;
        std::uint64_t mask;
    };
    const Shape shapes[] = {
        {1, 0x1}, // single edge, f = 2
        {2, 0x1}, // single edge inside n=2, f = 5
        {2, 0xF}, // K_{2,2}, f = 20
    };
    long scanned = 0;
    for (const Shape& sh : shapes) {
        BipartiteGraph g = graph_from_mask(sh.n, sh.mask);
        LossyInstance inst = make_lossy_instance(g);
        int oracle_max = oracle::max_matching_size(g);
        bool full = inst.f <= 20 && (!o.quick || inst.f <= 14);
        long total = full ? (1L << inst.f) : (o.quick ? 1L << 14 : 10000L);
        auto s = sweep_instances(total, o.serial, [&](long i) -> std::string {
            BitVec x(inst.f);
            if (full) {
                x.write_field(0, static_cast<int>(inst.f), static_cast<std::uint64_t>(i));
            } else {
                x = BitVec::from_seed(mix_seed(o.seed, 0xC8000000 + i), inst.f);
            }
            return check_dichotomy(g, x, oracle_max);
        });
        scanned += total;
        if (!s.ok) {
            finish(r, s, scanned, "");
            r.detail += " (n=" + std::to_string(sh.n) + " mask=" + std::to_string(sh.mask) + ")";
            return r;
        }
    }

    const long pipelines = o.quick ? 10 : 50;
    auto s2 = sweep_instances(pipelines, o.serial, [&](long i) -> std::string {
        std::uint64_t state = mix_seed(o.seed, 0xC8B00000 + i);
        int n = 1 + static_cast<int>(rnd(state, 4));
        BipartiteGraph g(n, {});
        for (int tries = 0; g.m() == 0 && tries < 100; ++tries) g = random_graph(state, n, 0.6);
        if (g.m() == 0) g = graph_from_mask(n, 1);
        LossyInstance inst = make_lossy_instance(g);
        LossySolveResult sol =
            inst.f <= 24
                ? lossy_solve(g, LossySolveMode::Exhaustive, 0, 0)
                : lossy_solve(g, LossySolveMode::Random, 20000, mix_seed(o.seed, 0xC8C00000 + i));
        if (lossy_roundtrip_ok(g, sol.witness)) return "lossy_solve returned a compressible string";
        Matching m = a2_extract(g, sol.witness);
        if (!validate_matching(g, m)) return "pipeline produced an invalid matching";
        if (static_cast<int>(m.size()) != oracle::max_matching_size(g))
            return "pipeline matching is not maximum on edges=" + edges_str(g);
        return "";
    });
    finish(r, s2, scanned + pipelines,
           std::to_string(scanned) + " strings + " + std::to_string(pipelines) + " pipelines");
    return r;
}

// --- criterion 9: fallback routes stay correct ------------------------------

CriterionResult crit9(const BatteryOptions& o) {
    auto r = make_result(9, "fallback routes stay correct and restore the tape");
    const long tapes = o.quick ? 6 : 52;
    const long total = 512 * tapes * 2;
    auto s = sweep_instances(total, o.serial, [&](long i) -> std::string {
        long half = i / 2;
        std::uint64_t mask = static_cast<std::uint64_t>(half / tapes);
        long t = half % tapes;
        BipartiteGraph g = graph_from_mask(3, mask);
        TapeLayout layout = TapeLayout::for_graph(g);
        BitVec bits = t == 0   ? BitVec::zeros(layout.total_bits())
                      : t == 1 ? all_ones(layout.total_bits())
                               : BitVec::from_seed(mix_seed(o.seed, 0xC9000000 + half),
                                                   layout.total_bits());
        CatalyticTape tape(layout, bits);
        DriverConfig cfg;
        if (i % 2 == 0)
            cfg.force_fallback = true;
        else
            cfg.fallback_threshold = 1;
        std::string msg = run_and_compare(g, tape, cfg);
        if (!msg.empty())
            msg += std::string(" (") + (i % 2 == 0 ? "force_fallback" : "fallback_threshold=1") +
                   " mask=" + std::to_string(mask) + " tape=" + std::to_string(t) + ")";
        return msg;
    });
    finish(r, s, total, std::to_string(total) + " runs across both fallback configs");
    return r;
}

// --- criterion 10: weighted extension vs exhaustive optimum -----------------

CriterionResult crit10(const BatteryOptions& o) {
    auto r = make_result(10, "weighted extension matches the exhaustive optimum");
    const long total = o.quick ? 50 : 200;
    auto s = sweep_instances(total, o.serial, [&](long i) -> std::string {
        std::uint64_t state = mix_seed(o.seed, 0xCA000000 + i);
        int n = 1 + static_cast<int>(rnd(state, 4));
        BipartiteGraph g = random_graph(state, n, 0.6);
        std::vector<std::int64_t> input_w = random_weights(state, g.m(), 16);
        TapeLayout layout = TapeLayout::for_graph(g);
        CatalyticTape tape =
            CatalyticTape::from_seed(layout, mix_seed(o.seed, 0xCA100000 + i));
        DriverConfig cfg;
        cfg.force_fallback = (i % 2 == 1); // exercise both routes
        WeightedResult res = min_weight_max_matching(g, input_w, tape, cfg);
        auto [want_w, want_m] = oracle::min_weight_max_matching_exhaustive(g, input_w);
        if (res.matching.size() != want_m.size())
            return "weighted result size " + std::to_string(res.matching.size()) +
                   " != oracle max " + std::to_string(want_m.size()) + " on edges=" +
                   edges_str(g);
        if (res.input_weight != want_w)
            return "weighted result weight " + std::to_string(res.input_weight) +
                   " != oracle minimum " + std::to_string(want_w) + " on edges=" + edges_str(g) +
                   " w=" + weights_str(input_w);
        if (!validate_matching(g, res.matching)) return "weighted result invalid";
        if (!res.report.tape_restored || !tape.restore_check()) return "tape not restored";
        return "";
    });
    finish(r, s, total, std::to_string(total) + " weighted instances, both routes");
    return r;
}

} // namespace

std::vector<int> battery_criteria() { return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}; }

CriterionResult run_criterion(int id, const BatteryOptions& opts) {
    auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    switch (id) {
    case 1: r = crit1(opts); break;
    case 2: r = crit2(opts); break;
    case 3: r = crit3(opts); break;
    case 4: r = crit4(opts); break;
    case 5: r = crit5(opts); break;
    case 6: r = crit6(opts); break;
    case 7: r = crit7(opts); break;
    case 8: r = crit8(opts); break;
    case 9: r = crit9(opts); break;
    case 10: r = crit10(opts); break;
    default: throw InputError("unknown criterion id " + std::to_string(id));
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::vector<CriterionResult> run_battery(
    const BatteryOptions& opts, const std::function<void(const CriterionResult&)>& progress) {
    std::vector<CriterionResult> out;
    for (int id : battery_criteria()) {
        out.push_back(run_criterion(id, opts));
        if (progress) progress(out.back());
    }
    return out;
}

} // namespace clmatch
