#include "cli/commands.hpp"

#include "cli/documents.hpp"

#include "thp/error.hpp"
#include "thp/event_data.hpp"
#include "thp/features.hpp"
#include "thp/io.hpp"
#include "thp/random.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>

namespace thp::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

void ensure_directory(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    return out;
}

json moves_to_json(const std::vector<Move>& moves) {
    json out = json::array();
    for (const auto& m : moves) out.push_back(to_string(m));
    return out;
}

json report_to_json(const StructureReport& r) {
    json out = {{"precision", r.precision},         {"recall", r.recall},
                {"f1", r.f1},                       {"true_positive", r.true_positive},
                {"false_positive", r.false_positive}, {"false_negative", r.false_negative}};
    if (r.alpha_mae) {
        out["alpha_mae"] = *r.alpha_mae;
        out["alpha_mae_normalizer_fallback"] = r.mae_normalizer_fallback;
    }
    return out;
}

} // namespace

SimulateOutcome cmd_simulate(const RunConfig& config, std::ostream& log) {
    SimConfig sim = config.simulate;
    sim.seed = config.seed;
    ensure_directory(config.out);

    SimulateOutcome outcome{.benchmark = generate_benchmark(sim),
                            .events_path = config.out / "events.csv",
                            .topology_path = config.out / "topology.csv",
                            .truth_path = config.out / "ground_truth.json",
                            .manifest_path = config.out / "manifest.json"};
    const Benchmark& b = outcome.benchmark;
    if (b.under_generated) {
        log << "warning: generated " << b.events.size() << " events, below 90% of the target "
            << sim.target_event_count << " within " << sim.max_bins << " bins\n";
    }

    {
        auto out = open_output(outcome.events_path);
        write_events_csv(out, b.events);
    }
    {
        auto out = open_output(outcome.topology_path);
        out << "# seed " << config.seed << '\n';
        write_edge_list(out, b.topology);
    }

    const json echo = to_json(config);
    GraphDocument truth{.graph = b.truth,
                        .params = b.params,
                        .delta = sim.kernel.decay,
                        .bin_width = sim.bin_width,
                        .score = std::nullopt,
                        .metadata = {{"seed", config.seed}, {"config", echo}, {"node_count", sim.node_count}}};
    if (sim.kernel.family != KernelFamily::kExponential) {
        truth.metadata["edge_kernels"] = edge_kernels_to_json(b.kernels);
    }
    write_json(outcome.truth_path, to_json(truth));

    const double horizon_end = static_cast<double>(b.horizon_bins) * sim.bin_width;
    write_json(outcome.manifest_path, {{"format_version", kFormatVersion},
                                       {"seed", config.seed},
                                       {"config", echo},
                                       {"node_count", sim.node_count},
                                       {"type_count", sim.type_count},
                                       {"avg_topology_degree", sim.avg_topology_degree},
                                       {"realized_topology_degree", b.topology.mean_degree()},
                                       {"event_count", b.events.size()},
                                       {"horizon_bins", b.horizon_bins},
                                       {"horizon_end", horizon_end},
                                       {"truth_edge_count", b.truth.edge_count()},
                                       {"under_generated", b.under_generated},
                                       {"files",
                                        {{"events", "events.csv"},
                                         {"topology", "topology.csv"},
                                         {"ground_truth", "ground_truth.json"}}}});
    log << "simulated " << b.events.size() << " events over " << b.horizon_bins << " bins; truth "
        << b.truth.to_string() << '\n';
    return outcome;
}

LearnOutcome cmd_learn(const RunConfig& config, std::ostream& log) {
    const auto& settings = config.learn;
    const auto started = std::chrono::steady_clock::now();
    if (settings.events.empty()) throw InvalidInput("learn needs an events file (--events)");
    if (settings.topology.empty() && !settings.no_topology) {
        throw InvalidInput("learn needs a topology file (--topology) unless --no-topology is set");
    }
    if (settings.max_hops < 0) throw InvalidInput("k must be non-negative");
    if (!(settings.decay > 0.0)) throw InvalidInput("delta must be positive");

    const auto events = read_events_csv(settings.events);
    EdgeListFile edges;
    if (!settings.topology.empty()) edges = read_edge_list(settings.topology);

    int max_node = edges.max_node_id;
    int max_type = -1;
    double max_time = -1.0;
    for (const auto& e : events) {
        max_node = std::max(max_node, e.node);
        max_type = std::max(max_type, e.event_type);
        max_time = std::max(max_time, e.timestamp);
    }
    const int node_count = settings.node_count.value_or(std::max(max_node + 1, 1));
    const int type_count = settings.type_count.value_or(std::max(max_type + 1, 1));
    if (edges.max_node_id >= node_count) {
        throw InvalidInput("topology references node " + std::to_string(edges.max_node_id) + " but node_count is " +
                           std::to_string(node_count));
    }
    const double dt = settings.bin_width;
    const double horizon_end = settings.horizon_end.value_or(
        max_time < 0.0 ? dt : (std::floor(max_time / dt) + 1.0) * dt);

    const DiscreteDataset dataset = discretize(events, node_count, type_count, dt, horizon_end);
    const int max_hops = settings.no_topology ? 0 : settings.max_hops;
    const TopologyGraph topology = settings.no_topology ? TopologyGraph::isolated(node_count, 0)
                                                        : TopologyGraph(node_count, edges.edges, max_hops);

    ensure_directory(config.out);
    std::optional<std::ofstream> trace;
    if (settings.write_trace) trace = open_output(config.out / "search_trace.jsonl");

    SearchConfig search{.em = config.em,
                        .penalty = settings.penalty,
                        .allow_cycles = settings.allow_cycles,
                        .threads = config.threads,
                        .progress = &log,
                        .trace = trace ? &*trace : nullptr};
    search.em.init_seed = derive_seed(config.seed, {7, config.em.init_seed});

    const ExponentialKernel kernel{settings.decay};
    LearnOutcome outcome;
    if (settings.k_sweep && !settings.no_topology) {
        outcome.result = hill_climb_k_sweep(dataset, topology, kernel, max_hops, search);
    } else {
        const FeatureCache cache(dataset, topology, kernel, max_hops);
        outcome.result = hill_climb(cache, search);
    }
    outcome.node_count = node_count;
    outcome.type_count = type_count;
    outcome.event_count = dataset.total_events();
    outcome.horizon_bins = dataset.horizon_bins();
    outcome.graph_path = config.out / "learned_graph.json";
    outcome.report_path = config.out / "learn_report.json";

    const SearchResult& r = outcome.result;
    const json echo = to_json(config);
    const std::string variant = settings.no_topology ? "THP_NT" : "THP";
    GraphDocument learned{.graph = r.graph,
                          .params = r.params,
                          .delta = settings.decay,
                          .bin_width = dt,
                          .score = r.score,
                          .metadata = {{"seed", config.seed}, {"variant", variant}, {"config", echo}}};
    write_json(outcome.graph_path, to_json(learned));

    const double penalty =
        bic_penalty(parameter_count(type_count, r.graph.edge_count(), r.max_hops, settings.penalty),
                    dataset.total_events());
    write_json(outcome.report_path, {{"format_version", kFormatVersion},
                                     {"variant", variant},
                                     {"seed", config.seed},
                                     {"config", echo},
                                     {"score", r.score},
                                     {"log_likelihood", r.score + penalty},
                                     {"bic_penalty", penalty},
                                     {"k", r.max_hops},
                                     {"rounds", r.rounds},
                                     {"moves", moves_to_json(r.moves)},
                                     {"trajectory", r.trajectory},
                                     {"node_count", node_count},
                                     {"type_count", type_count},
                                     {"event_count", dataset.total_events()},
                                     {"horizon_bins", dataset.horizon_bins()},
                                     {"edge_count", r.graph.edge_count()}});

    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    log << variant << ": learned " << r.graph.to_string() << " L_B=" << std::setprecision(10) << r.score << " in "
        << r.rounds << " rounds, wall time " << std::setprecision(3) << seconds << " s\n";
    return outcome;
}

StructureReport cmd_evaluate(const RunConfig& config, std::ostream& out) {
    if (config.evaluate.predicted.empty() || config.evaluate.truth.empty()) {
        throw InvalidInput("evaluate needs --predicted and --truth graph files");
    }
    const GraphDocument predicted = read_graph_document(config.evaluate.predicted);
    const GraphDocument truth = read_graph_document(config.evaluate.truth);
    if (predicted.graph.type_count() != truth.graph.type_count()) {
        throw InvalidInput("type universes differ: predicted has " + std::to_string(predicted.graph.type_count()) +
                           " types, truth has " + std::to_string(truth.graph.type_count()));
    }
    StructureReport report = structure_metrics(predicted.graph, truth.graph);
    if (predicted.params.max_hops == truth.params.max_hops) {
        const MaeResult mae =
            alpha_mae(predicted.params, truth.params, truth.graph.type_count(), truth.params.max_hops);
        report.alpha_mae = mae.value;
        report.mae_normalizer_fallback = mae.normalizer_fallback;
    }

    ensure_directory(config.out);
    write_json(config.out / "evaluation.json", {{"format_version", kFormatVersion},
                                                {"seed", config.seed},
                                                {"predicted", config.evaluate.predicted.string()},
                                                {"truth", config.evaluate.truth.string()},
                                                {"report", report_to_json(report)},
                                                {"summary", summary_line(report)}});
    out << summary_line(report) << '\n';
    return report;
}

std::vector<BenchmarkRow> cmd_benchmark(const RunConfig& config, std::ostream& out, std::ostream& log) {
    if (config.benchmark.seeds < 1) throw InvalidInput("benchmark.seeds must be at least 1");
    std::vector<BenchmarkRow> rows;
    ensure_directory(config.out);
    for (int i = 0; i < config.benchmark.seeds; ++i) {
        const std::uint64_t seed = config.seed + static_cast<std::uint64_t>(i);
        RunConfig sim = config;
        sim.seed = seed;
        sim.out = config.out / ("seed_" + std::to_string(seed));
        const SimulateOutcome simulated = cmd_simulate(sim, log);

        for (const bool no_topology : {false, true}) {
            RunConfig learn = sim;
            learn.out = sim.out / (no_topology ? "thp_nt" : "thp");
            learn.learn.events = simulated.events_path;
            learn.learn.topology = simulated.topology_path;
            learn.learn.node_count = config.simulate.node_count;
            learn.learn.type_count = config.simulate.type_count;
            learn.learn.horizon_end =
                static_cast<double>(simulated.benchmark.horizon_bins) * config.simulate.bin_width;
            learn.learn.bin_width = config.simulate.bin_width;
            learn.learn.no_topology = no_topology;
            const LearnOutcome learned = cmd_learn(learn, log);

            RunConfig eval = learn;
            eval.evaluate.predicted = learned.graph_path;
            eval.evaluate.truth = simulated.truth_path;
            std::ostringstream summary;
            rows.push_back({seed, no_topology ? "THP_NT" : "THP", cmd_evaluate(eval, summary)});
            log << "seed " << seed << ' ' << rows.back().variant << ": " << summary.str();
        }
    }

    json per_seed = json::array();
    for (const auto& row : rows) {
        per_seed.push_back({{"seed", row.seed}, {"variant", row.variant}, {"report", report_to_json(row.report)}});
    }

    out << "variant  precision        recall           f1\n";
    json summary = json::object();
    for (const std::string variant : {"THP", "THP_NT"}) {
        auto stats = [&](auto field) {
            double sum = 0.0;
            double sq = 0.0;
            int n = 0;
            for (const auto& row : rows) {
                if (row.variant != variant) continue;
                const double x = field(row.report);
                sum += x;
                sq += x * x;
                ++n;
            }
            const double mean = sum / n;
            const double var = n > 1 ? std::max(0.0, (sq - n * mean * mean) / (n - 1)) : 0.0;
            return std::pair{mean, std::sqrt(var)};
        };
        const auto p = stats([](const StructureReport& r) { return r.precision; });
        const auto rc = stats([](const StructureReport& r) { return r.recall; });
        const auto f = stats([](const StructureReport& r) { return r.f1; });
        char line[160];
        std::snprintf(line, sizeof line, "%-8s %.3f ± %.3f    %.3f ± %.3f    %.3f ± %.3f\n", variant.c_str(), p.first,
                      p.second, rc.first, rc.second, f.first, f.second);
        out << line;
        summary[variant] = {{"precision_mean", p.first}, {"precision_std", p.second}, {"recall_mean", rc.first},
                            {"recall_std", rc.second},   {"f1_mean", f.first},        {"f1_std", f.second}};
    }
    write_json(config.out / "benchmark.json", {{"format_version", kFormatVersion},
                                               {"seed", config.seed},
                                               {"config", to_json(config)},
                                               {"summary", summary},
                                               {"runs", per_seed}});
    return rows;
}

namespace {

struct Overrides {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<int> k;
    std::optional<double> delta;
    std::optional<double> dt;
    std::optional<int> threads;
    bool no_topology = false;
    bool allow_cycles = false;
    bool dag_only = false;
    // learn
    std::optional<std::string> events;
    std::optional<std::string> topology;
    std::optional<int> nodes;
    std::optional<int> types;
    std::optional<double> horizon;
    bool k_sweep = false;
    bool trace = false;
    std::optional<std::string> penalty;
    // evaluate
    std::optional<std::string> predicted;
    std::optional<std::string> truth;
    // simulate / benchmark
    std::optional<std::int64_t> target_events;
    std::optional<int> seeds;
};

void add_common(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--config", o.config_path, "JSON config file");
    cmd->add_option("--seed", o.seed, "Global seed");
    cmd->add_option("--out", o.out, "Output directory");
    cmd->add_option("--k", o.k, "Maximum topological hop K");
    cmd->add_option("--delta", o.delta, "Exponential kernel decay");
    cmd->add_option("--dt", o.dt, "Bin width");
    cmd->add_option("--threads", o.threads, "Worker threads for candidate scoring");
    cmd->add_flag("--no-topology", o.no_topology, "Ignore the topology (identity propagation, K = 0)");
    auto* cycles = cmd->add_flag("--allow-cycles", o.allow_cycles, "Allow cyclic causal graphs (default)");
    auto* dag = cmd->add_flag("--dag-only", o.dag_only, "Restrict the search to acyclic graphs");
    cycles->excludes(dag);
}

RunConfig resolve(const Overrides& o) {
    RunConfig c = o.config_path.empty() ? RunConfig{} : load_config(o.config_path);
    if (o.seed) c.seed = *o.seed;
    if (o.out) c.out = *o.out;
    if (o.threads) c.threads = *o.threads;
    if (o.k) {
        c.simulate.max_hops = *o.k;
        c.learn.max_hops = *o.k;
    }
    if (o.delta) {
        c.simulate.kernel.decay = *o.delta;
        c.learn.decay = *o.delta;
    }
    if (o.dt) {
        c.simulate.bin_width = *o.dt;
        c.learn.bin_width = *o.dt;
    }
    if (o.no_topology) c.learn.no_topology = true;
    if (o.allow_cycles) c.learn.allow_cycles = true;
    if (o.dag_only) c.learn.allow_cycles = false;
    if (o.events) c.learn.events = *o.events;
    if (o.topology) c.learn.topology = *o.topology;
    if (o.nodes) {
        c.learn.node_count = *o.nodes;
        c.simulate.node_count = *o.nodes;
    }
    if (o.types) {
        c.learn.type_count = *o.types;
        c.simulate.type_count = *o.types;
    }
    if (o.horizon) c.learn.horizon_end = *o.horizon;
    if (o.k_sweep) c.learn.k_sweep = true;
    if (o.trace) c.learn.write_trace = true;
    if (o.penalty) c.learn.penalty = penalty_from_name(*o.penalty);
    if (o.predicted) c.evaluate.predicted = *o.predicted;
    if (o.truth) c.evaluate.truth = *o.truth;
    if (o.target_events) c.simulate.target_event_count = *o.target_events;
    if (o.seeds) c.benchmark.seeds = *o.seeds;
    return c;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Topological Hawkes process toolkit: simulate, learn and evaluate causal graphs among event types"};
    app.require_subcommand(1);
    Overrides o;

    auto* simulate = app.add_subcommand("simulate", "Generate a synthetic benchmark dataset");
    add_common(simulate, o);
    simulate->add_option("--nodes", o.nodes, "Number of topology nodes");
    simulate->add_option("--types", o.types, "Number of event types");
    simulate->add_option("--target-events", o.target_events, "Target event count");

    auto* learn = app.add_subcommand("learn", "Learn a causal graph from events and a topology");
    add_common(learn, o);
    learn->add_option("--events", o.events, "Event CSV (node,event_type,timestamp)");
    learn->add_option("--topology", o.topology, "Topology edge list");
    learn->add_option("--nodes", o.nodes, "Node count (default: inferred)");
    learn->add_option("--types", o.types, "Event type count (default: inferred)");
    learn->add_option("--horizon", o.horizon, "Observation horizon end (default: inferred)");
    learn->add_flag("--k-sweep", o.k_sweep, "Select K in [0, k] by BIC");
    learn->add_flag("--trace", o.trace, "Write search_trace.jsonl");
    learn->add_option("--penalty", o.penalty, "BIC parameter rule: hops, hops_at_least_1, coefficients");

    auto* evaluate = app.add_subcommand("evaluate", "Compare a learned graph with the ground truth");
    add_common(evaluate, o);
    evaluate->add_option("--predicted", o.predicted, "Learned graph JSON");
    evaluate->add_option("--truth", o.truth, "Ground-truth graph JSON");

    auto* benchmark = app.add_subcommand("benchmark", "Seed batch of simulate -> learn -> evaluate");
    add_common(benchmark, o);
    benchmark->add_option("--nodes", o.nodes, "Number of topology nodes");
    benchmark->add_option("--types", o.types, "Number of event types");
    benchmark->add_option("--target-events", o.target_events, "Target event count");
    benchmark->add_option("--seeds", o.seeds, "Number of seeds");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    }

    try {
        const RunConfig config = resolve(o);
        if (simulate->parsed()) {
            cmd_simulate(config, err);
        } else if (learn->parsed()) {
            cmd_learn(config, err);
        } else if (evaluate->parsed()) {
            cmd_evaluate(config, out);
        } else if (benchmark->parsed()) {
            cmd_benchmark(config, out, err);
        }
    } catch (const InvalidInput& e) {
        err << "invalid input: " << e.what() << '\n';
        return kExitInvalidInput;
    } catch (const UnsupportedKernel& e) {
        err << "invalid input: " << e.what() << '\n';
        return kExitInvalidInput;
    } catch (const DegenerateModel& e) {
        err << "degenerate model: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const ExplosionError& e) {
        err << "degenerate model: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const IoError& e) {
        err << "i/o error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitOk;
}

} // namespace thp::cli
