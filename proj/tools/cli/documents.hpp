#pragma once

#include "thp/causal_graph.hpp"
#include "thp/likelihood.hpp"
#include "thp/simulator.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>

namespace thp::cli {

inline constexpr int kFormatVersion = 1;

/// Learned-graph and ground-truth file:
///   {"format_version", "type_count", "k", "delta", "dt", "score", "mu": [...],
///    "edges": [{"from", "to", "alpha": [k0..kK]}], ...metadata}
struct GraphDocument {
    CausalGraph graph{1};
    ThpParams params;
    double delta = 0.11;
    double bin_width = 1.0;
    std::optional<double> score;
    nlohmann::json metadata = nlohmann::json::object();
};

nlohmann::json to_json(const GraphDocument& doc);
GraphDocument graph_from_json(const nlohmann::json& doc, const std::string& source);
GraphDocument read_graph_document(const std::filesystem::path& path);

nlohmann::json edge_kernels_to_json(const EdgeKernels& kernels);

// Pretty-printed, newline-terminated; throws IoError on failure.
void write_json(const std::filesystem::path& path, const nlohmann::json& doc);
nlohmann::json read_json(const std::filesystem::path& path);

} // namespace thp::cli
