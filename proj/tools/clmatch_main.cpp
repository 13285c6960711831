#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "clmatch/battery.hpp"
#include "clmatch/driver.hpp"
#include "clmatch/generate.hpp"
#include "clmatch/graph.hpp"
#include "clmatch/lossy.hpp"
#include "clmatch/oracle.hpp"
#include "clmatch/residual.hpp"
#include "clmatch/weighted.hpp"

using nlohmann::json;
using namespace clmatch;

namespace {

json matching_json(const BipartiteGraph& g, const Matching& m) {
    json arr = json::array();
    for (int id : m) {
        Edge e = g.edge(id);
        arr.push_back({e.u, e.v});
    }
    return arr;
}

json layout_json(const TapeLayout& layout) {
    return {{"weight_bits", layout.weight_bits},
            {"num_reserves", layout.num_reserves},
            {"scratch_bits", layout.scratch_bits},
            {"record_bits", layout.record_bits()},
            {"padding_bits", layout.padding_bits()},
            {"total_bits", layout.total_bits()}};
}

struct TapeArgs {
    int weight_bits = 0;
    int num_reserves = -1;
    int scratch_bits = 0;
    std::string hex;
    std::uint64_t seed = 0;
};

void add_tape_options(CLI::App* cmd, TapeArgs& args) {
    cmd->add_option("--weight-bits", args.weight_bits,
                    "Bits per tape field (0 = default for n)");
    cmd->add_option("--reserves", args.num_reserves,
                    "Number of reserve slots (-1 = default for the graph)");
    cmd->add_option("--scratch-bits", args.scratch_bits, "Extra scratch bits");
    cmd->add_option("--tape", args.hex, "Initial tape content as hex (exact length)");
    cmd->add_option("--seed", args.seed, "Seed for random initial tape content");
}

CatalyticTape build_tape(const BipartiteGraph& g, const TapeArgs& args) {
    TapeLayout layout =
        TapeLayout::for_graph(g, args.weight_bits, args.num_reserves, args.scratch_bits);
    if (!args.hex.empty()) return CatalyticTape::from_hex(layout, args.hex);
    return CatalyticTape::from_seed(layout, args.seed);
}

Backend parse_backend(const std::string& name) {
    if (name == "combinatorial") return Backend::Combinatorial;
    if (name == "determinant") return Backend::Determinant;
    throw InputError("unknown backend '" + name + "'");
}

int run_solve(const std::string& graph_path, const TapeArgs& tape_args,
              const std::string& backend_name, bool coarse_scale, int fallback_threshold,
              bool force_fallback, bool trace, const std::string& input_weight_path) {
    BipartiteGraph g = read_graph_file(graph_path);
    CatalyticTape tape = build_tape(g, tape_args);
    DriverConfig cfg;
    cfg.backend = parse_backend(backend_name);
    cfg.coarse_scale = coarse_scale;
    cfg.fallback_threshold = fallback_threshold;
    cfg.force_fallback = force_fallback;
    cfg.record_trace = trace;

    json out;
    RunReport rep;
    if (!input_weight_path.empty()) {
        std::vector<std::int64_t> input_w = read_weight_file(input_weight_path, g);
        WeightedResult res = min_weight_max_matching(g, input_w, tape, cfg);
        rep = res.report;
        out["input_weight"] = res.input_weight;
    } else {
        rep = run_clp_match(g, tape, cfg);
    }
    out["n"] = g.n();
    out["m"] = g.m();
    out["matching"] = matching_json(g, rep.matching);
    out["size"] = rep.size;
    out["compressions"] = rep.compressions;
    out["fallback_fired"] = rep.fallback_fired;
    out["tape_restored"] = rep.tape_restored;
    out["freed_bits_peak"] = rep.freed_bits_peak;
    out["tape"] = layout_json(tape.layout());
    if (trace) out["trace"] = rep.trace;
    std::cout << out.dump(2) << "\n";
    return rep.tape_restored ? 0 : 2;
}

int run_extract(const std::string& graph_path, const std::string& weight_path, int k,
                const std::string& backend_name, bool coarse_scale) {
    BipartiteGraph g = read_graph_file(graph_path);
    std::vector<std::int64_t> w = read_weight_file(weight_path, g);
    Matching m = extract_isolated_size_k(g, k, w, parse_backend(backend_name), coarse_scale);
    json out;
    out["k"] = k;
    out["matching"] = matching_json(g, m);
    out["weight"] = matching_weight(m, w);
    std::cout << out.dump(2) << "\n";
    return 0;
}

int run_residual(const std::string& graph_path, const std::string& weight_path, int k,
                 bool dump) {
    BipartiteGraph g = read_graph_file(graph_path);
    std::vector<std::int64_t> w = read_weight_file(weight_path, g);
    Matching m = extract_isolated_size_k(g, k, w);
    ResidualGraph res = build_residual(g, m, w);
    if (dump) {
        std::cout << dump_residual(res);
        return 0;
    }
    IsolationOutcome out = check_k_plus_1(g, k, w);
    json j;
    j["k"] = k;
    j["matching"] = matching_json(g, m);
    j["maximum"] = is_maximum(res);
    std::optional<std::int64_t> dist = min_weight_path(res, res.s(), res.t());
    j["min_augmenting_weight"] = dist ? json(*dist) : json(nullptr);
    switch (out.verdict) {
    case IsolationVerdict::Bot: j["verdict"] = "bot"; break;
    case IsolationVerdict::Isolated: j["verdict"] = "isolated"; break;
    case IsolationVerdict::Threshold: j["verdict"] = "threshold"; break;
    }
    if (out.threshold_edge) {
        Edge e = g.edge(*out.threshold_edge);
        j["threshold_edge"] = {e.u, e.v};
    } else {
        j["threshold_edge"] = nullptr;
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_oracle(const std::string& graph_path, const std::string& weight_path) {
    BipartiteGraph g = read_graph_file(graph_path);
    if (g.n() > oracle::kMaxOracleN)
        throw InputError("oracle refuses n > " + std::to_string(oracle::kMaxOracleN));
    std::vector<std::int64_t> w(g.m(), 0);
    if (!weight_path.empty()) w = read_weight_file(weight_path, g);
    oracle::OracleReport rep = oracle::brute_force_matchings(g, w);
    json j;
    j["max_size"] = rep.max_size;
    json by = json::array();
    for (const auto& sc : rep.by_size) {
        json e;
        e["k"] = sc.k;
        e["matchings"] = sc.matching_count;
        e["min_weight"] = sc.min_weight ? json(*sc.min_weight) : json(nullptr);
        e["min_count"] = sc.min_count;
        e["isolated"] = sc.isolated;
        by.push_back(e);
    }
    j["by_size"] = by;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_lossy(const std::string& graph_path, const std::string& mode, long samples,
              std::uint64_t seed, const std::string& backend_name) {
    BipartiteGraph g = read_graph_file(graph_path);
    Backend backend = parse_backend(backend_name);
    LossyInstance inst = make_lossy_instance(g);
    LossySolveResult sol = lossy_solve(
        g, mode == "exhaustive" ? LossySolveMode::Exhaustive : LossySolveMode::Random, samples,
        seed, backend);
    Matching m = a2_extract(g, sol.witness, backend);
    json j;
    j["f_bits"] = inst.f;
    j["field_bits"] = inst.widths.full_bits;
    j["witness_hex"] = sol.witness.to_hex();
    j["samples_tried"] = sol.samples_tried;
    j["matching"] = matching_json(g, m);
    j["size"] = m.size();
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_gen(const std::string& family_name, int n, double p, std::uint64_t mask,
            const std::string& weights_name, const TapeArgs& tape_args, std::uint64_t seed,
            const std::string& graph_out, const std::string& tape_out) {
    GenSpec spec;
    if (family_name == "gnp") spec.family = Family::RandomGnp;
    else if (family_name == "complete") spec.family = Family::Complete;
    else if (family_name == "path") spec.family = Family::Path;
    else if (family_name == "star") spec.family = Family::Star;
    else if (family_name == "crafted") spec.family = Family::CraftedNonisolating;
    else if (family_name == "mask") spec.family = Family::ExhaustiveSmall;
    else throw InputError("unknown family '" + family_name + "'");
    if (weights_name == "random") spec.weights = WeightMode::TapeRandom;
    else if (weights_name == "equal") spec.weights = WeightMode::AllEqual;
    else if (weights_name == "powers") spec.weights = WeightMode::DistinctPowers;
    else throw InputError("unknown weight mode '" + weights_name + "'");
    spec.n = n;
    spec.p = p;
    spec.mask = mask;
    spec.seed = seed;
    spec.weight_bits = tape_args.weight_bits;
    spec.num_reserves = tape_args.num_reserves;
    spec.scratch_bits = tape_args.scratch_bits;

    GeneratedInstance inst = generate(spec);
    std::string graph_text = format_graph(inst.g);
    std::string tape_hex = inst.tape_bits.to_hex();
    if (!graph_out.empty()) {
        std::ofstream f(graph_out);
        if (!f) throw InputError("cannot write " + graph_out);
        f << graph_text;
    }
    if (!tape_out.empty()) {
        std::ofstream f(tape_out);
        if (!f) throw InputError("cannot write " + tape_out);
        f << tape_hex << "\n";
    }
    json j;
    j["n"] = inst.g.n();
    j["m"] = inst.g.m();
    j["graph"] = graph_text;
    j["tape_hex"] = tape_hex;
    j["tape"] = layout_json(inst.layout);
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_testsuite(bool quick, bool serial, std::uint64_t seed) {
    BatteryOptions opts;
    opts.quick = quick;
    opts.serial = serial;
    opts.seed = seed;
    bool all_ok = true;
    run_battery(opts, [&](const CriterionResult& r) {
        all_ok = all_ok && r.passed;
        std::printf("[%s] criterion %d: %s (%ld checks, %.1fs)%s%s\n",
                    r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.checked, r.seconds,
                    r.passed ? "" : " -- ", r.passed ? "" : r.detail.c_str());
        std::fflush(stdout);
    });
    return all_ok ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Catalytic-tape bipartite maximum matching toolkit"};
    app.require_subcommand(1);

    std::string graph_path, weight_path, input_weight_path, backend = "combinatorial";
    std::string mode = "random", family = "gnp", weights_mode = "random";
    std::string graph_out, tape_out;
    TapeArgs tape_args;
    int k = 0, fallback_threshold = -1;
    long samples = 100000;
    double p = 0.5;
    std::uint64_t mask = 0, gen_seed = 0, suite_seed = 0xC1A55EED5EEDULL, lossy_seed = 0;
    int gen_n = 3;
    bool coarse_scale = false, force_fallback = false, trace = false, dump = false;
    bool quick = false, serial = false;

    CLI::App* solve = app.add_subcommand("solve", "Run the catalytic matching loop on a graph");
    solve->add_option("--graph", graph_path, "Graph file: 'n m' header then 'u v' lines")
        ->required();
    add_tape_options(solve, tape_args);
    solve->add_option("--backend", backend, "Extraction backend: combinatorial or determinant");
    solve->add_flag("--coarse-scale", coarse_scale, "Use the 10*n^4 extension scale");
    solve->add_option("--fallback-threshold", fallback_threshold,
                      "Compressions allowed before direct fallback (-1 = reserve count)");
    solve->add_flag("--force-fallback", force_fallback, "Skip compression, use the fallback");
    solve->add_flag("--trace", trace, "Record per-step trace lines");
    solve->add_option("--input-weights", input_weight_path,
                      "Input weight file: minimize this weight among maximum matchings");

    CLI::App* extract = app.add_subcommand("extract", "Extract the unique min-weight matching");
    extract->add_option("--graph", graph_path)->required();
    extract->add_option("--weights", weight_path, "Weight file, one integer per edge")
        ->required();
    extract->add_option("--k", k, "Matching size")->required();
    extract->add_option("--backend", backend);
    extract->add_flag("--coarse-scale", coarse_scale);

    CLI::App* residual = app.add_subcommand("residual", "Inspect the residual graph at size k");
    residual->add_option("--graph", graph_path)->required();
    residual->add_option("--weights", weight_path)->required();
    residual->add_option("--k", k)->required();
    residual->add_flag("--dump", dump, "Print arcs as 'u v weight origin' lines");

    CLI::App* oracle_cmd = app.add_subcommand("oracle", "Brute-force matching statistics");
    oracle_cmd->add_option("--graph", graph_path)->required();
    oracle_cmd->add_option("--weights", weight_path);

    CLI::App* lossy = app.add_subcommand("lossy", "Find an incompressible string, extract from it");
    lossy->add_option("--graph", graph_path)->required();
    lossy->add_option("--mode", mode, "exhaustive or random");
    lossy->add_option("--samples", samples, "Random mode: attempts before giving up");
    lossy->add_option("--seed", lossy_seed);
    lossy->add_option("--backend", backend);

    CLI::App* gen = app.add_subcommand("gen", "Generate a graph and matching tape");
    gen->add_option("--family", family, "gnp, complete, path, star, crafted, or mask");
    gen->add_option("--n", gen_n)->required();
    gen->add_option("--p", p, "Edge probability (gnp)");
    gen->add_option("--mask", mask, "Edge bit mask (mask family)");
    gen->add_option("--weights-mode", weights_mode, "random, equal, or powers");
    gen->add_option("--weight-bits", tape_args.weight_bits);
    gen->add_option("--reserves", tape_args.num_reserves);
    gen->add_option("--scratch-bits", tape_args.scratch_bits);
    gen->add_option("--seed", gen_seed);
    gen->add_option("--graph-out", graph_out, "Write the graph file here");
    gen->add_option("--tape-out", tape_out, "Write the tape hex here");

    CLI::App* suite = app.add_subcommand("testsuite", "Run the acceptance battery");
    suite->add_flag("--quick", quick, "Trimmed sweep sizes");
    suite->add_flag("--serial", serial, "Single-threaded sweeps");
    suite->add_option("--seed", suite_seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (solve->parsed())
            return run_solve(graph_path, tape_args, backend, coarse_scale, fallback_threshold,
                             force_fallback, trace, input_weight_path);
        if (extract->parsed()) return run_extract(graph_path, weight_path, k, backend, coarse_scale);
        if (residual->parsed()) return run_residual(graph_path, weight_path, k, dump);
        if (oracle_cmd->parsed()) return run_oracle(graph_path, weight_path);
        if (lossy->parsed()) return run_lossy(graph_path, mode, samples, lossy_seed, backend);
        if (gen->parsed())
            return run_gen(family, gen_n, p, mask, weights_mode, tape_args, gen_seed, graph_out,
                           tape_out);
        if (suite->parsed()) return run_testsuite(quick, serial, suite_seed);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
