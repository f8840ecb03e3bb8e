#include "cli/config.hpp"

#include "thp/error.hpp"

#include <fstream>
#include <set>

namespace thp::cli {

using nlohmann::json;

namespace {

void reject_unknown(const json& doc, const std::set<std::string>& allowed, const std::string& section) {
    if (!doc.is_object()) throw InvalidInput("config section '" + section + "' must be an object");
    for (const auto& [key, value] : doc.items()) {
        if (!allowed.contains(key)) throw InvalidInput("unknown config key '" + section + "." + key + "'");
    }
}

template <class T>
void read(const json& doc, const char* key, T& target) {
    if (doc.contains(key)) target = doc.at(key).get<T>();
}

std::pair<double, double> read_range(const json& doc, const char* key, std::pair<double, double> fallback) {
    if (!doc.contains(key)) return fallback;
    const auto& r = doc.at(key);
    if (!r.is_array() || r.size() != 2) throw InvalidInput(std::string("config key '") + key + "' must be [low, high]");
    return {r[0].get<double>(), r[1].get<double>()};
}

} // namespace

std::string penalty_name(EdgeParameterRule rule) {
    switch (rule) {
        case EdgeParameterRule::kHops: return "hops";
        case EdgeParameterRule::kHopsAtLeast1: return "hops_at_least_1";
        case EdgeParameterRule::kCoefficients: return "coefficients";
    }
    return "hops_at_least_1";
}

EdgeParameterRule penalty_from_name(const std::string& name) {
    if (name == "hops") return EdgeParameterRule::kHops;
    if (name == "hops_at_least_1") return EdgeParameterRule::kHopsAtLeast1;
    if (name == "coefficients") return EdgeParameterRule::kCoefficients;
    throw InvalidInput("unknown penalty rule '" + name + "' (expected hops, hops_at_least_1 or coefficients)");
}

json kernel_to_json(const KernelSpec& spec) {
    switch (spec.family) {
        case KernelFamily::kExponential: return {{"type", "exponential"}, {"delta", spec.decay}};
        case KernelFamily::kGaussian:
            return {{"type", "gaussian"},
                    {"mean_range", {spec.location_range.first, spec.location_range.second}},
                    {"sigma", spec.width}};
        case KernelFamily::kUniform:
            return {{"type", "uniform"},
                    {"start_range", {spec.location_range.first, spec.location_range.second}},
                    {"scale", spec.width}};
    }
    return {};
}

KernelSpec kernel_from_json(const json& doc) {
    KernelSpec spec;
    const std::string type = doc.value("type", "exponential");
    if (type == "exponential") {
        reject_unknown(doc, {"type", "delta"}, "kernel");
        spec.family = KernelFamily::kExponential;
        read(doc, "delta", spec.decay);
    } else if (type == "gaussian") {
        reject_unknown(doc, {"type", "mean_range", "mean", "sigma"}, "kernel");
        spec.family = KernelFamily::kGaussian;
        if (doc.contains("mean")) {
            const double m = doc.at("mean").get<double>();
            spec.location_range = {m, m};
        }
        spec.location_range = read_range(doc, "mean_range", spec.location_range);
        read(doc, "sigma", spec.width);
    } else if (type == "uniform") {
        reject_unknown(doc, {"type", "start_range", "start", "scale"}, "kernel");
        spec.family = KernelFamily::kUniform;
        if (doc.contains("start")) {
            const double b = doc.at("start").get<double>();
            spec.location_range = {b, b};
        }
        spec.location_range = read_range(doc, "start_range", spec.location_range);
        read(doc, "scale", spec.width);
    } else {
        throw InvalidInput("unknown kernel type '" + type + "'");
    }
    return spec;
}

RunConfig parse_config(const json& doc) {
    RunConfig c;
    try {
        reject_unknown(doc, {"seed", "out", "threads", "simulate", "learn", "em", "evaluate", "benchmark"}, "root");
        read(doc, "seed", c.seed);
        if (doc.contains("out")) c.out = doc.at("out").get<std::string>();
        read(doc, "threads", c.threads);

        if (doc.contains("simulate")) {
            const auto& s = doc.at("simulate");
            reject_unknown(s,
                           {"node_count", "avg_topology_degree", "type_count", "avg_indegree", "target_event_count",
                            "mu_range", "alpha_range", "kernel", "k", "dt", "max_bins", "explosion_guard"},
                           "simulate");
            auto& sim = c.simulate;
            read(s, "node_count", sim.node_count);
            read(s, "avg_topology_degree", sim.avg_topology_degree);
            read(s, "type_count", sim.type_count);
            read(s, "avg_indegree", sim.avg_indegree);
            read(s, "target_event_count", sim.target_event_count);
            sim.mu_range = read_range(s, "mu_range", sim.mu_range);
            sim.alpha_range = read_range(s, "alpha_range", sim.alpha_range);
            if (s.contains("kernel")) sim.kernel = kernel_from_json(s.at("kernel"));
            read(s, "k", sim.max_hops);
            read(s, "dt", sim.bin_width);
            read(s, "max_bins", sim.max_bins);
            read(s, "explosion_guard", sim.explosion_guard);
        }

        if (doc.contains("learn")) {
            const auto& l = doc.at("learn");
            reject_unknown(l,
                           {"events", "topology", "node_count", "type_count", "horizon_end", "dt", "k", "kernel",
                            "allow_cycles", "no_topology", "k_sweep", "trace", "penalty"},
                           "learn");
            auto& learn = c.learn;
            if (l.contains("events")) learn.events = l.at("events").get<std::string>();
            if (l.contains("topology")) learn.topology = l.at("topology").get<std::string>();
            if (l.contains("node_count")) learn.node_count = l.at("node_count").get<int>();
            if (l.contains("type_count")) learn.type_count = l.at("type_count").get<int>();
            if (l.contains("horizon_end")) learn.horizon_end = l.at("horizon_end").get<double>();
            read(l, "dt", learn.bin_width);
            read(l, "k", learn.max_hops);
            if (l.contains("kernel")) {
                const KernelSpec spec = kernel_from_json(l.at("kernel"));
                if (spec.family != KernelFamily::kExponential) {
                    throw UnsupportedKernel("learning supports only the exponential kernel");
                }
                learn.decay = spec.decay;
            }
            read(l, "allow_cycles", learn.allow_cycles);
            read(l, "no_topology", learn.no_topology);
            read(l, "k_sweep", learn.k_sweep);
            read(l, "trace", learn.write_trace);
            if (l.contains("penalty")) learn.penalty = penalty_from_name(l.at("penalty").get<std::string>());
        }

        if (doc.contains("em")) {
            const auto& e = doc.at("em");
            reject_unknown(e, {"max_iterations", "rel_tolerance", "restarts", "init_seed"}, "em");
            read(e, "max_iterations", c.em.max_iterations);
            read(e, "rel_tolerance", c.em.rel_tolerance);
            read(e, "restarts", c.em.restarts);
            read(e, "init_seed", c.em.init_seed);
        }

        if (doc.contains("evaluate")) {
            const auto& e = doc.at("evaluate");
            reject_unknown(e, {"predicted", "truth"}, "evaluate");
            if (e.contains("predicted")) c.evaluate.predicted = e.at("predicted").get<std::string>();
            if (e.contains("truth")) c.evaluate.truth = e.at("truth").get<std::string>();
        }

        if (doc.contains("benchmark")) {
            const auto& b = doc.at("benchmark");
            reject_unknown(b, {"seeds"}, "benchmark");
            read(b, "seeds", c.benchmark.seeds);
        }
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("config: ") + e.what());
    }
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config " + path.string());
    try {
        return parse_config(json::parse(in));
    } catch (const json::parse_error& e) {
        throw InvalidInput(path.string() + ": " + e.what());
    }
}

json to_json(const RunConfig& c) {
    const auto& s = c.simulate;
    const auto& l = c.learn;
    json learn = {{"events", l.events.string()},
                  {"topology", l.topology.string()},
                  {"dt", l.bin_width},
                  {"k", l.max_hops},
                  {"kernel", {{"type", "exponential"}, {"delta", l.decay}}},
                  {"allow_cycles", l.allow_cycles},
                  {"no_topology", l.no_topology},
                  {"k_sweep", l.k_sweep},
                  {"trace", l.write_trace},
                  {"penalty", penalty_name(l.penalty)}};
    if (l.node_count) learn["node_count"] = *l.node_count;
    if (l.type_count) learn["type_count"] = *l.type_count;
    if (l.horizon_end) learn["horizon_end"] = *l.horizon_end;
    return {
        {"seed", c.seed},
        {"out", c.out.string()},
        {"threads", c.threads},
        {"simulate",
         {{"node_count", s.node_count},
          {"avg_topology_degree", s.avg_topology_degree},
          {"type_count", s.type_count},
          {"avg_indegree", s.avg_indegree},
          {"target_event_count", s.target_event_count},
          {"mu_range", {s.mu_range.first, s.mu_range.second}},
          {"alpha_range", {s.alpha_range.first, s.alpha_range.second}},
          {"kernel", kernel_to_json(s.kernel)},
          {"k", s.max_hops},
          {"dt", s.bin_width},
          {"max_bins", s.max_bins},
          {"explosion_guard", s.explosion_guard}}},
        {"learn", learn},
        {"em",
         {{"max_iterations", c.em.max_iterations},
          {"rel_tolerance", c.em.rel_tolerance},
          {"restarts", c.em.restarts},
          {"init_seed", c.em.init_seed}}},
        {"evaluate", {{"predicted", c.evaluate.predicted.string()}, {"truth", c.evaluate.truth.string()}}},
        {"benchmark", {{"seeds", c.benchmark.seeds}}},
    };
}

} // namespace thp::cli
