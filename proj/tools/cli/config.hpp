#pragma once

#include "thp/em.hpp"
#include "thp/kernels.hpp"
#include "thp/likelihood.hpp"
#include "thp/simulator.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace thp::cli {

struct LearnSettings {
    std::filesystem::path events;
    std::filesystem::path topology;
    std::optional<int> node_count;
    std::optional<int> type_count;
    std::optional<double> horizon_end;
    double bin_width = 1.0;
    int max_hops = 2;
    double decay = 0.11;
    bool allow_cycles = true;
    bool no_topology = false;
    bool k_sweep = false;
    bool write_trace = false;
    EdgeParameterRule penalty = EdgeParameterRule::kHopsAtLeast1;
};

struct EvaluateSettings {
    std::filesystem::path predicted;
    std::filesystem::path truth;
};

struct BenchmarkSettings {
    int seeds = 5;
};

/// Effective configuration of one CLI run, after applying flag overrides.
struct RunConfig {
    std::uint64_t seed = 0;
    std::filesystem::path out = "out";
    int threads = 1;
    SimConfig simulate;
    LearnSettings learn;
    EmConfig em;
    EvaluateSettings evaluate;
    BenchmarkSettings benchmark;
};

// Reads a JSON document; missing keys keep their defaults, unknown keys are rejected.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);

// Echo written into every output document.
nlohmann::json to_json(const RunConfig& config);

nlohmann::json kernel_to_json(const KernelSpec& spec);
KernelSpec kernel_from_json(const nlohmann::json& doc);
std::string penalty_name(EdgeParameterRule rule);
EdgeParameterRule penalty_from_name(const std::string& name);

} // namespace thp::cli
