// dagtrace: build DP DAG instances, reconstruct canonical witness paths in
// frontier-width-bounded space, and verify them against the full-table
// reference.

#include <chrono>
#include <functional>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dagtrace/builders.hpp"
#include "dagtrace/dagfile.hpp"
#include "dagtrace/oracle.hpp"
#include "dagtrace/traceback.hpp"

namespace {

using namespace dagtrace;

// Exit codes: 0 ok, 1 verification mismatch, 2 usage, 3 I/O, 4 unreachable
// sink, 70 internal invariant failure.
constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitNoWitness = 4;
constexpr int kExitInternal = 70;

AssertLevel parse_assert_level(const std::string& s) {
    if (s == "off") return AssertLevel::Off;
    if (s == "decomposition") return AssertLevel::Decomposition;
    if (s == "full") return AssertLevel::Full;
    throw CLI::ValidationError("--assert-level", "expected off|decomposition|full");
}

Vertex resolve_sink(const DpDag& dag, std::int64_t requested) {
    if (requested == 0) return dag.sinks().back();
    if (requested < 1 || requested > dag.vertex_count()) {
        throw std::out_of_range("sink " + std::to_string(requested) + " outside 1.." +
                                std::to_string(dag.vertex_count()));
    }
    return static_cast<Vertex>(requested);
}

// Rebuilds the DAG with one edge weight bumped; negative control for verify.
DpDag fuzz_one_edge(const DpDag& dag, std::uint64_t fuzz_seed) {
    std::vector<EdgeSpec> edges;
    for (Vertex u = 1; u <= dag.vertex_count(); ++u) {
        const auto succ = dag.successors(u);
        const auto weights = dag.successor_weights(u);
        for (std::size_t i = 0; i < succ.size(); ++i) edges.push_back({u, succ[i], weights[i]});
    }
    std::vector<SourceSpec> sources(dag.sources().begin(), dag.sources().end());
    std::vector<Vertex> sinks(dag.sinks().begin(), dag.sinks().end());
    if (edges.empty()) {
        sources.front().init = extend(sources.front().init, Value::of(1));
    } else {
        EdgeSpec& victim = edges[fuzz_seed % edges.size()];
        victim.weight = extend(victim.weight, Value::of(1));
    }
    return DpDag::build(dag.vertex_count(), std::move(edges), std::move(sources),
                        std::move(sinks), dag.semiring_tag(), dag.delta_max());
}

struct EngineFlags {
    std::int64_t base_case = 0;
    std::string assert_level = "decomposition";

    TracebackConfig config() const {
        TracebackConfig cfg;
        cfg.base_case_threshold = static_cast<Vertex>(base_case);
        cfg.assert_level = parse_assert_level(assert_level);
        return cfg;
    }
};

void add_engine_flags(CLI::App* cmd, EngineFlags& flags) {
    cmd->add_option("--base-case", flags.base_case,
                    "base-case interval threshold (0 = ceil(log2(T)^2))");
    cmd->add_option("--assert-level", flags.assert_level,
                    "run-time invariant checks: off|decomposition|full");
}

// ---------------------------------------------------------------- build ---

struct BuildArgs {
    std::string out;
    // grid / banded
    std::string a, b;
    std::int64_t len_a = 0, len_b = 0, length = 0;
    std::uint64_t seed = 0;
    int alphabet = 4;
    std::string scoring = "lcs";
    std::int64_t match = 1, mismatch = 0, gap = 0;
    std::string order = "column";
    std::int64_t band = -1;
    // chain
    std::int64_t chain_length = 0;
    std::int64_t step = 1;
    // layered
    std::int64_t layers = 0, width = 0;
    double density = 0.5;
    // gadget
    std::int64_t omega = 0;
    std::string pattern;
    std::int64_t gadget_layers = 0;
    bool plain_bonuses = false;
};

GridSpec grid_spec_of(const BuildArgs& args, bool banded) {
    GridSpec spec;
    Rng rng(args.seed);
    if (!args.a.empty() || !args.b.empty() || (args.len_a == 0 && args.len_b == 0 &&
                                               args.length == 0)) {
        spec.a = args.a;
        spec.b = args.b;
    } else if (args.length > 0) {
        spec.a = random_string(static_cast<std::size_t>(args.length), args.alphabet, rng);
        spec.b = random_string(static_cast<std::size_t>(args.length), args.alphabet, rng);
    } else {
        spec.a = random_string(static_cast<std::size_t>(args.len_a), args.alphabet, rng);
        spec.b = random_string(static_cast<std::size_t>(args.len_b), args.alphabet, rng);
    }
    if (args.scoring == "lcs") {
        spec.scoring = GridScoring::lcs();
    } else if (args.scoring == "custom") {
        spec.scoring.match = Value::of(args.match);
        spec.scoring.mismatch = Value::of(args.mismatch);
        spec.scoring.gap = Value::of(args.gap);
    } else {
        throw CLI::ValidationError("--scoring", "expected lcs|custom");
    }
    if (args.order == "column") {
        spec.order = GridOrder::ColumnMajor;
    } else if (args.order == "row") {
        spec.order = GridOrder::RowMajor;
    } else {
        throw CLI::ValidationError("--order", "expected column|row");
    }
    if (banded && args.band < 0) throw CLI::ValidationError("--band", "required for banded");
    if (args.band >= 0) spec.band = static_cast<int>(args.band);
    return spec;
}

DpDag build_family(const std::string& family, const BuildArgs& args) {
    if (family == "grid" || family == "banded") {
        return build_grid(grid_spec_of(args, family == "banded"));
    }
    if (family == "chain") {
        ChainSpec spec;
        spec.length = static_cast<Vertex>(args.chain_length);
        spec.step = static_cast<int>(args.step);
        spec.seed = args.seed;
        return build_chain(spec);
    }
    if (family == "layered") {
        LayeredSpec spec;
        spec.layers = static_cast<int>(args.layers);
        spec.width = static_cast<int>(args.width);
        spec.density = args.density;
        spec.seed = args.seed;
        return build_random_layered(spec);
    }
    if (family == "gadget") {
        GadgetSpec spec;
        spec.omega = static_cast<int>(args.omega);
        for (char c : args.pattern) {
            if (c != '0' && c != '1') {
                throw ValidationError("gadget pattern must be a 0/1 string");
            }
            spec.pattern.push_back(c == '1');
        }
        spec.layer_count = static_cast<int>(args.gadget_layers);
        spec.encode_pattern = !args.plain_bonuses;
        return build_lb_gadget(spec);
    }
    throw ValidationError("unknown family: " + family);
}

// ---------------------------------------------------------------- sweep ---

std::vector<std::int64_t> parse_int_list(const std::string& text) {
    std::vector<std::int64_t> values;
    std::stringstream stream(text);
    std::string token;
    while (std::getline(stream, token, ',')) {
        if (token.empty()) continue;
        const auto dots = token.find("..");
        if (dots != std::string::npos) {
            const std::int64_t lo = std::stoll(token.substr(0, dots));
            const std::int64_t hi = std::stoll(token.substr(dots + 2));
            for (std::int64_t v = lo; v <= hi; ++v) values.push_back(v);
        } else {
            values.push_back(std::stoll(token));
        }
    }
    return values;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"frontier-width-bounded canonical witness traceback on DP DAGs"};
    app.require_subcommand(1);

    // build ----------------------------------------------------------------
    BuildArgs build_args;
    CLI::App* build = app.add_subcommand("build", "build an instance and write a dag file");
    build->require_subcommand(1);
    std::vector<std::pair<std::string, CLI::App*>> build_families;
    for (const char* name : {"grid", "banded", "chain", "layered", "gadget"}) {
        CLI::App* fam = build->add_subcommand(name, std::string("build a ") + name + " instance");
        fam->add_option("-o,--out", build_args.out, "output dag file")->required();
        if (std::string(name) == "grid" || std::string(name) == "banded") {
            fam->add_option("--a", build_args.a, "first string");
            fam->add_option("--b", build_args.b, "second string");
            fam->add_option("--len-a", build_args.len_a, "random first string length");
            fam->add_option("--len-b", build_args.len_b, "random second string length");
            fam->add_option("--length", build_args.length, "random length for both strings");
            fam->add_option("--seed", build_args.seed, "random string seed");
            fam->add_option("--alphabet", build_args.alphabet, "alphabet size (default 4)");
            fam->add_option("--scoring", build_args.scoring, "lcs|custom (default lcs)");
            fam->add_option("--match", build_args.match, "custom match score");
            fam->add_option("--mismatch", build_args.mismatch, "custom mismatch score");
            fam->add_option("--gap", build_args.gap, "custom gap score");
            fam->add_option("--order", build_args.order, "column|row (default column)");
            fam->add_option("--band", build_args.band, "band half-width");
        } else if (std::string(name) == "chain") {
            fam->add_option("--length", build_args.chain_length, "chain length")->required();
            fam->add_option("--step", build_args.step, "dependency span (default 1)");
            fam->add_option("--seed", build_args.seed, "weight seed");
        } else if (std::string(name) == "layered") {
            fam->add_option("--layers", build_args.layers, "layer count")->required();
            fam->add_option("--width", build_args.width, "layer width")->required();
            fam->add_option("--density", build_args.density, "edge probability (default 0.5)");
            fam->add_option("--seed", build_args.seed, "sampling seed");
        } else {
            fam->add_option("--omega", build_args.omega, "lane count")->required();
            fam->add_option("--pattern", build_args.pattern, "active-lane bit string")->required();
            fam->add_option("--layers", build_args.gadget_layers, "rail stages (default omega)");
            fam->add_flag("--plain-bonuses", build_args.plain_bonuses,
                          "disable pattern encoding in the rails");
        }
        build_families.emplace_back(name, fam);
    }

    // trace ----------------------------------------------------------------
    std::string trace_path;
    std::int64_t trace_sink = 0;
    EngineFlags trace_flags;
    CLI::App* trace = app.add_subcommand("trace", "reconstruct the canonical witness path");
    trace->add_option("dag", trace_path, "dag file")->required();
    trace->add_option("--sink", trace_sink, "target sink (default: last sink in the file)");
    add_engine_flags(trace, trace_flags);

    // verify ---------------------------------------------------------------
    std::string verify_path;
    std::int64_t verify_sink = 0;
    std::int64_t fuzz = -1;
    EngineFlags verify_flags;
    CLI::App* verify = app.add_subcommand(
        "verify", "run engine and full-table reference, compare paths and values");
    verify->add_option("dag", verify_path, "dag file")->required();
    verify->add_option("--sink", verify_sink, "target sink (default: last sink in the file)");
    verify->add_option("--fuzz", fuzz,
                       "corrupt one edge weight on the engine side (negative control)");
    add_engine_flags(verify, verify_flags);

    // sweep ----------------------------------------------------------------
    std::string sweep_family;
    std::string sweep_out;
    std::string lengths_text, seeds_text = "1", bands_text, n_list_text, layers_text;
    std::int64_t sweep_m = 8, sweep_n = 256, sweep_step = 1, sweep_width = 8;
    double sweep_density = 0.5;
    EngineFlags sweep_flags;
    CLI::App* sweep = app.add_subcommand("sweep", "run traceback over instance ranges, emit CSV");
    sweep->add_option("family", sweep_family, "chain|grid|banded|layered")->required();
    sweep->add_option("--lengths", lengths_text, "chain lengths, e.g. 1024,2048 or 10..20");
    sweep->add_option("--step", sweep_step, "chain dependency span");
    sweep->add_option("--m", sweep_m, "grid short dimension");
    sweep->add_option("--n-list", n_list_text, "grid long dimensions, comma list");
    sweep->add_option("--n", sweep_n, "banded sequence length");
    sweep->add_option("--bands", bands_text, "band half-widths, comma list");
    sweep->add_option("--layers-list", layers_text, "layered layer counts, comma list");
    sweep->add_option("--width", sweep_width, "layered width");
    sweep->add_option("--density", sweep_density, "layered edge probability");
    sweep->add_option("--seeds", seeds_text, "seed list, e.g. 1..5 (default 1)");
    sweep->add_option("--out", sweep_out, "CSV output file (default stdout)");
    add_engine_flags(sweep, sweep_flags);

    // info -----------------------------------------------------------------
    std::string info_path, info_format = "text";
    CLI::App* info = app.add_subcommand("info", "print structural statistics of a dag file");
    info->add_option("dag", info_path, "dag file")->required();
    info->add_option("--format", info_format, "text|json (default text)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (build->parsed()) {
            for (const auto& [name, fam] : build_families) {
                if (!fam->parsed()) continue;
                const DpDag dag = build_family(name, build_args);
                write_dag_file(dag, std::filesystem::path(build_args.out));
                std::cout << "T=" << dag.vertex_count() << " omega=" << dag.frontier_width()
                          << "\n";
            }
            return kExitOk;
        }

        if (trace->parsed()) {
            const DpDag dag = read_dag_file(std::filesystem::path(trace_path));
            const Vertex sink = resolve_sink(dag, trace_sink);
            const TracebackConfig cfg = trace_flags.config();
            const RunMetrics metrics =
                traceback_stream(dag, sink, cfg, [](Vertex v) { std::cout << v << "\n"; });
            nlohmann::ordered_json j;
            j["value"] = global_forward(dag, sink).payload();
            j["peak_live_words"] = metrics.peak_live_words;
            j["omega"] = dag.frontier_width();
            j["depth"] = metrics.max_recursion_depth;
            j["forward_passes"] = metrics.forward_pass_count;
            j["vertex_visits"] = metrics.vertex_visit_count;
            j["root_boundary_words"] = metrics.root_boundary_words;
            std::cout << j.dump() << "\n";
            return kExitOk;
        }

        if (verify->parsed()) {
            const DpDag dag = read_dag_file(std::filesystem::path(verify_path));
            const Vertex sink = resolve_sink(dag, verify_sink);
            TracebackConfig cfg = verify_flags.config();
            const Vertex threshold = cfg.base_case_threshold > 0
                                         ? cfg.base_case_threshold
                                         : default_base_case_threshold(dag.vertex_count());
            cfg.base_case_threshold = threshold;

            const DpDag engine_view = fuzz >= 0
                                          ? fuzz_one_edge(dag, static_cast<std::uint64_t>(fuzz))
                                          : DpDag(dag);

            WitnessPath engine_path;
            RunMetrics engine_metrics;
            bool engine_no_witness = false;
            try {
                auto [p, m] = traceback(engine_view, sink, cfg);
                engine_path = std::move(p);
                engine_metrics = m;
            } catch (const NoWitnessError&) {
                engine_no_witness = true;
            }

            const FullTable table = oracle_solve(dag);
            RunMetrics oracle_metrics = oracle_solve_metrics(dag);
            WitnessPath oracle_path;
            bool oracle_no_witness = table.value(sink).is_bottom();
            if (!oracle_no_witness) {
                oracle_path = oracle_canonical_path(dag, sink, threshold, &oracle_metrics);
            }

            ComparisonReport report = compare_runs(
                engine_path, oracle_path, engine_metrics, oracle_metrics,
                engine_no_witness ? Value::bottom() : path_value(engine_view, engine_path),
                table.value(sink));
            report.no_witness_a = engine_no_witness;
            report.no_witness_b = oracle_no_witness;
            if (engine_no_witness || oracle_no_witness) {
                // both sides must agree there is no witness
                report.paths_equal = engine_no_witness == oracle_no_witness;
                report.values_equal = report.paths_equal;
            }
            std::cout << report.to_json() << "\n";
            return report.equal() ? kExitOk : kExitMismatch;
        }

        if (sweep->parsed()) {
            const std::vector<std::int64_t> seeds = parse_int_list(seeds_text);
            std::vector<std::pair<std::string, std::function<DpDag(Rng&)>>> cells;

            if (sweep_family == "chain") {
                for (std::int64_t length : parse_int_list(lengths_text)) {
                    std::string params = "length=" + std::to_string(length) +
                                         ";step=" + std::to_string(sweep_step);
                    cells.emplace_back(params, [length, sweep_step](Rng& rng) {
                        ChainSpec spec;
                        spec.length = static_cast<Vertex>(length);
                        spec.step = static_cast<int>(sweep_step);
                        spec.seed = rng.next();
                        return build_chain(spec);
                    });
                }
            } else if (sweep_family == "grid") {
                for (std::int64_t n : parse_int_list(n_list_text)) {
                    std::string params = "m=" + std::to_string(sweep_m) +
                                         ";n=" + std::to_string(n);
                    const std::int64_t m = sweep_m;
                    cells.emplace_back(params, [m, n](Rng& rng) {
                        GridSpec spec;
                        spec.a = random_string(static_cast<std::size_t>(m), 4, rng);
                        spec.b = random_string(static_cast<std::size_t>(n), 4, rng);
                        return build_grid(spec);
                    });
                }
            } else if (sweep_family == "banded") {
                for (std::int64_t band : parse_int_list(bands_text)) {
                    std::string params = "n=" + std::to_string(sweep_n) +
                                         ";band=" + std::to_string(band);
                    const std::int64_t n = sweep_n;
                    cells.emplace_back(params, [n, band](Rng& rng) {
                        GridSpec spec;
                        spec.a = random_string(static_cast<std::size_t>(n), 4, rng);
                        spec.b = random_string(static_cast<std::size_t>(n), 4, rng);
                        spec.band = static_cast<int>(band);
                        return build_grid(spec);
                    });
                }
            } else if (sweep_family == "layered") {
                for (std::int64_t layers : parse_int_list(layers_text)) {
                    std::string params = "layers=" + std::to_string(layers) +
                                         ";width=" + std::to_string(sweep_width) +
                                         ";density=" + std::to_string(sweep_density);
                    const std::int64_t width = sweep_width;
                    const double density = sweep_density;
                    cells.emplace_back(params, [layers, width, density](Rng& rng) {
                        LayeredSpec spec;
                        spec.layers = static_cast<int>(layers);
                        spec.width = static_cast<int>(width);
                        spec.density = density;
                        spec.seed = rng.next();
                        return build_random_layered(spec);
                    });
                }
            } else {
                std::cerr << "unknown sweep family: " << sweep_family << "\n";
                return kExitUsage;
            }

            if (cells.empty() || seeds.empty()) {
                std::cerr << "sweep requires non-empty parameter and seed ranges\n";
                return kExitUsage;
            }

            std::ofstream file_out;
            if (!sweep_out.empty()) {
                file_out.open(sweep_out);
                if (!file_out) throw IoError("cannot open " + sweep_out + " for writing");
            }
            std::ostream& out = sweep_out.empty() ? std::cout : file_out;
            out << "family,params,seed,T,omega,peak_live_words,depth,forward_passes,"
                   "vertex_visits,wall_time_ms,status\n";

            bool any_failed = false;
            for (const auto& [params, make] : cells) {
                for (std::int64_t seed : seeds) {
                    out << sweep_family << "," << params << "," << seed << ",";
                    try {
                        Rng rng(static_cast<std::uint64_t>(seed));
                        const DpDag dag = make(rng);
                        const auto start = std::chrono::steady_clock::now();
                        const auto [path, metrics] =
                            traceback(dag, dag.sinks().back(), sweep_flags.config());
                        const double ms =
                            std::chrono::duration<double, std::milli>(
                                std::chrono::steady_clock::now() - start)
                                .count();
                        out << dag.vertex_count() << "," << dag.frontier_width() << ","
                            << metrics.peak_live_words << "," << metrics.max_recursion_depth
                            << "," << metrics.forward_pass_count << ","
                            << metrics.vertex_visit_count << "," << ms << ",ok\n";
                    } catch (const std::exception& e) {
                        any_failed = true;
                        std::string what = e.what();
                        for (char& c : what) {
                            if (c == ',' || c == '\n') c = ' ';
                        }
                        out << ",,,,,,," << "error:" << what << "\n";
                    }
                }
            }
            return any_failed ? kExitMismatch : kExitOk;
        }

        if (info->parsed()) {
            const DpDag dag = read_dag_file(std::filesystem::path(info_path));
            nlohmann::ordered_json j;
            j["vertices"] = dag.vertex_count();
            j["edges"] = dag.edge_count();
            j["omega"] = dag.frontier_width();
            j["semiring"] = to_string(dag.semiring_tag());
            j["delta_max"] = dag.delta_max();
            j["max_in_degree"] = dag.max_in_degree();
            j["max_out_degree"] = dag.max_out_degree();
            j["sources"] = dag.sources().size();
            j["sinks"] = dag.sinks().size();
            j["default_base_case"] = default_base_case_threshold(dag.vertex_count());
            if (info_format == "json") {
                std::cout << j.dump() << "\n";
            } else {
                for (const auto& [key, value] : j.items()) {
                    std::cout << key << " " << value << "\n";
                }
            }
            return kExitOk;
        }
    } catch (const NoWitnessError& e) {
        std::cerr << "no witness: " << e.what() << "\n";
        return kExitNoWitness;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitIo;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InternalError& e) {
        std::cerr << "internal invariant failure: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}
