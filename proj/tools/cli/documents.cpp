#include "cli/documents.hpp"

#include "thp/error.hpp"

#include <fstream>
#include <variant>

namespace thp::cli {

using nlohmann::json;

json to_json(const GraphDocument& doc) {
    json edges = json::array();
    for (const auto& [from, to] : doc.graph.edges()) {
        json alpha = json::array();
        if (auto it = doc.params.alpha.find({from, to}); it != doc.params.alpha.end()) alpha = it->second;
        edges.push_back({{"from", from}, {"to", to}, {"alpha", alpha}});
    }
    json out = doc.metadata.is_object() ? doc.metadata : json::object();
    out["format_version"] = kFormatVersion;
    out["type_count"] = doc.graph.type_count();
    out["k"] = doc.params.max_hops;
    out["delta"] = doc.delta;
    out["dt"] = doc.bin_width;
    out["score"] = doc.score ? json(*doc.score) : json(nullptr);
    out["mu"] = doc.params.mu;
    out["edges"] = edges;
    return out;
}

GraphDocument graph_from_json(const json& doc, const std::string& source) {
    try {
        GraphDocument g;
        const int types = doc.at("type_count").get<int>();
        g.graph = CausalGraph(types);
        g.params.max_hops = doc.value("k", 0);
        g.delta = doc.value("delta", 0.11);
        g.bin_width = doc.value("dt", 1.0);
        if (doc.contains("score") && doc.at("score").is_number()) g.score = doc.at("score").get<double>();
        g.params.mu = doc.value("mu", std::vector<double>{});
        if (g.params.mu.empty()) g.params.mu.assign(static_cast<std::size_t>(types), 0.0);
        for (const auto& e : doc.at("edges")) {
            const int from = e.at("from").get<int>();
            const int to = e.at("to").get<int>();
            g.graph.add_edge(from, to);
            auto alpha = e.value("alpha", std::vector<double>{});
            if (alpha.empty()) alpha.assign(static_cast<std::size_t>(g.params.max_hops) + 1, 0.0);
            g.params.alpha[{from, to}] = std::move(alpha);
        }
        g.params.validate(g.graph);
        for (const auto& [key, value] : doc.items()) {
            if (key != "format_version" && key != "type_count" && key != "k" && key != "delta" && key != "dt" &&
                key != "score" && key != "mu" && key != "edges") {
                g.metadata[key] = value;
            }
        }
        return g;
    } catch (const json::exception& e) {
        throw InvalidInput(source + ": malformed graph document: " + e.what());
    } catch (const InvalidInput& e) {
        throw InvalidInput(source + ": " + e.what());
    }
}

GraphDocument read_graph_document(const std::filesystem::path& path) {
    return graph_from_json(read_json(path), path.string());
}

json edge_kernels_to_json(const EdgeKernels& kernels) {
    json out = json::array();
    for (const auto& [edge, kernel] : kernels) {
        json k = {{"from", edge.first}, {"to", edge.second}};
        if (const auto* g = std::get_if<GaussianKernel>(&kernel)) {
            k["type"] = "gaussian";
            k["mean"] = g->mean;
            k["sigma"] = g->stddev;
        } else if (const auto* u = std::get_if<UniformKernel>(&kernel)) {
            k["type"] = "uniform";
            k["start"] = u->start;
            k["scale"] = u->scale;
        } else {
            k["type"] = "exponential";
            k["delta"] = std::get<ExponentialKernel>(kernel).decay;
        }
        out.push_back(std::move(k));
    }
    return out;
}

void write_json(const std::filesystem::path& path, const json& doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << doc.dump(2) << '\n';
    if (!out) throw IoError("failed writing " + path.string());
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string() + " for reading");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InvalidInput(path.string() + ": " + e.what());
    }
}

} // namespace thp::cli
