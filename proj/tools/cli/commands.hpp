#pragma once

#include "cli/config.hpp"

#include "thp/metrics.hpp"
#include "thp/search.hpp"
#include "thp/simulator.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace thp::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitDegenerate = 3;
inline constexpr int kExitIo = 4;

struct SimulateOutcome {
    Benchmark benchmark;
    std::filesystem::path events_path;
    std::filesystem::path topology_path;
    std::filesystem::path truth_path;
    std::filesystem::path manifest_path;
};

// Writes events.csv, topology.csv, ground_truth.json and manifest.json into config.out.
SimulateOutcome cmd_simulate(const RunConfig& config, std::ostream& log);

struct LearnOutcome {
    SearchResult result;
    int node_count = 0;
    int type_count = 0;
    std::int64_t event_count = 0;
    std::int64_t horizon_bins = 0;
    std::filesystem::path graph_path;
    std::filesystem::path report_path;
};

// Writes learned_graph.json and learn_report.json (plus search_trace.jsonl when tracing).
LearnOutcome cmd_learn(const RunConfig& config, std::ostream& log);

// Writes evaluation.json and prints the one-line summary to `out`.
StructureReport cmd_evaluate(const RunConfig& config, std::ostream& out);

struct BenchmarkRow {
    std::uint64_t seed = 0;
    std::string variant;
    StructureReport report;
};

// Seed batch of simulate -> learn (THP and the no-topology variant) -> evaluate.
std::vector<BenchmarkRow> cmd_benchmark(const RunConfig& config, std::ostream& out, std::ostream& log);

// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace thp::cli
