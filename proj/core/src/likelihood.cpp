#include "thp/likelihood.hpp"

#include "thp/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace thp {

ThpParams ThpParams::zeros(const CausalGraph& graph, int max_hops) {
    ThpParams p;
    p.max_hops = max_hops;
    p.mu.assign(static_cast<std::size_t>(graph.type_count()), 0.0);
    for (const auto& e : graph.edges()) p.alpha[e].assign(static_cast<std::size_t>(max_hops) + 1, 0.0);
    return p;
}

double ThpParams::strength(int cause, int effect, int hop) const {
    const auto it = alpha.find({cause, effect});
    if (it == alpha.end()) return 0.0;
    return it->second.at(static_cast<std::size_t>(hop));
}

void ThpParams::validate(const CausalGraph& graph) const {
    if (max_hops < 0) throw InvalidInput("max_hops must be non-negative");
    if (mu.size() != static_cast<std::size_t>(graph.type_count())) {
        throw InvalidInput("mu has " + std::to_string(mu.size()) + " entries for " +
                           std::to_string(graph.type_count()) + " event types");
    }
    for (double m : mu) {
        if (!(m >= 0.0) || !std::isfinite(m)) throw InvalidInput("base intensities must be finite and non-negative");
    }
    for (const auto& [edge, values] : alpha) {
        if (!graph.has_edge(edge.first, edge.second)) {
            throw InvalidInput("alpha references edge " + std::to_string(edge.first) + "->" +
                               std::to_string(edge.second) + " absent from the causal graph");
        }
        if (values.size() != static_cast<std::size_t>(max_hops) + 1) {
            throw InvalidInput("alpha for edge " + std::to_string(edge.first) + "->" + std::to_string(edge.second) +
                               " must have max_hops + 1 entries");
        }
        for (double a : values) {
            if (!(a >= 0.0) || !std::isfinite(a)) throw InvalidInput("causal strengths must be finite and non-negative");
        }
    }
    for (const auto& edge : graph.edges()) {
        if (!alpha.contains(edge)) {
            throw InvalidInput("edge " + std::to_string(edge.first) + "->" + std::to_string(edge.second) +
                               " has no alpha entry");
        }
    }
}

TypeParams extract_type_params(const ThpParams& params, const CausalGraph& graph, int type) {
    TypeParams tp;
    tp.type = type;
    tp.max_hops = params.max_hops;
    tp.mu = params.mu.at(static_cast<std::size_t>(type));
    tp.parents = graph.parents(type);
    tp.alpha.reserve(tp.parents.size() * tp.hop_count());
    for (int parent : tp.parents) {
        const auto it = params.alpha.find({parent, type});
        if (it == params.alpha.end()) {
            throw InvalidInput("edge " + std::to_string(parent) + "->" + std::to_string(type) + " has no alpha entry");
        }
        if (it->second.size() != tp.hop_count()) throw InvalidInput("alpha vector length does not match max_hops");
        tp.alpha.insert(tp.alpha.end(), it->second.begin(), it->second.end());
    }
    return tp;
}

void assign_type_params(ThpParams& params, const TypeParams& tp) {
    params.mu.at(static_cast<std::size_t>(tp.type)) = tp.mu;
    for (std::size_t p = 0; p < tp.parents.size(); ++p) {
        auto& dst = params.alpha[{tp.parents[p], tp.type}];
        dst.assign(tp.alpha.begin() + static_cast<std::ptrdiff_t>(p * tp.hop_count()),
                   tp.alpha.begin() + static_cast<std::ptrdiff_t>((p + 1) * tp.hop_count()));
    }
}

namespace {

void check_compatible(const FeatureCache& cache, const TypeParams& tp) {
    if (tp.type < 0 || tp.type >= cache.type_count()) throw InvalidInput("event type outside the cache's universe");
    if (tp.max_hops != cache.max_hops()) {
        throw InvalidInput("parameters use max_hops=" + std::to_string(tp.max_hops) + " but the feature cache has " +
                           std::to_string(cache.max_hops()));
    }
    if (tp.alpha.size() != tp.parents.size() * tp.hop_count()) throw InvalidInput("alpha layout mismatch");
}

} // namespace

double type_intensity(const FeatureCache& cache, const TypeParams& tp, std::size_t cell) {
    double lambda = tp.mu;
    const int hops = static_cast<int>(tp.hop_count());
    for (std::size_t p = 0; p < tp.parents.size(); ++p) {
        for (int k = 0; k < hops; ++k) {
            const double a = tp.strength(p, k);
            if (a != 0.0) lambda += a * cache.feature(tp.parents[p], k, cell);
        }
    }
    return lambda;
}

double intensity(const ThpParams& params, const CausalGraph& graph, const FeatureCache& cache, int node, int type,
                 std::int64_t bin) {
    const auto cell = cache.find_cell(node, bin);
    if (!cell) {
        throw InvalidInput("cell (node=" + std::to_string(node) + ", bin=" + std::to_string(bin) +
                           ") is not occupied; features are cached only where events occurred");
    }
    const TypeParams tp = extract_type_params(params, graph, type);
    check_compatible(cache, tp);
    return type_intensity(cache, tp, *cell);
}

double type_log_likelihood(const FeatureCache& cache, const TypeParams& tp) {
    check_compatible(cache, tp);
    const double exposure =
        static_cast<double>(cache.node_count()) * static_cast<double>(cache.horizon_bins()) * cache.bin_width();
    double compensator = tp.mu * exposure;
    for (std::size_t p = 0; p < tp.parents.size(); ++p) {
        for (int k = 0; k <= tp.max_hops; ++k) {
            compensator += tp.strength(p, k) * cache.total(tp.parents[p], k) * cache.bin_width();
        }
    }
    double log_term = 0.0;
    for (const auto& obs : cache.observations(tp.type)) {
        const double lambda = type_intensity(cache, tp, obs.cell);
        if (!(lambda > 0.0)) return -std::numeric_limits<double>::infinity();
        log_term += static_cast<double>(obs.count) * std::log(lambda);
    }
    return log_term - compensator;
}

double log_likelihood(const ThpParams& params, const CausalGraph& graph, const FeatureCache& cache) {
    if (graph.type_count() != cache.type_count()) throw InvalidInput("graph and cache disagree on the type count");
    params.validate(graph);
    double total = 0.0;
    for (int v = 0; v < graph.type_count(); ++v) {
        total += type_log_likelihood(cache, extract_type_params(params, graph, v));
    }
    return total;
}

TypeGradient type_gradient(const FeatureCache& cache, const TypeParams& tp) {
    check_compatible(cache, tp);
    const double dt = cache.bin_width();
    TypeGradient g;
    g.mu = -static_cast<double>(cache.node_count()) * static_cast<double>(cache.horizon_bins()) * dt;
    g.alpha.assign(tp.alpha.size(), 0.0);
    const auto hops = tp.hop_count();
    for (std::size_t p = 0; p < tp.parents.size(); ++p) {
        for (std::size_t k = 0; k < hops; ++k) {
            g.alpha[p * hops + k] = -dt * cache.total(tp.parents[p], static_cast<int>(k));
        }
    }
    for (const auto& obs : cache.observations(tp.type)) {
        const double lambda = type_intensity(cache, tp, obs.cell);
        if (!(lambda > 0.0)) throw DegenerateModel("gradient undefined: zero intensity at an observed cell");
        const double w = static_cast<double>(obs.count) / lambda;
        g.mu += w;
        for (std::size_t p = 0; p < tp.parents.size(); ++p) {
            for (std::size_t k = 0; k < hops; ++k) {
                g.alpha[p * hops + k] += w * cache.feature(tp.parents[p], static_cast<int>(k), obs.cell);
            }
        }
    }
    return g;
}

namespace {

std::int64_t per_edge_parameters(int max_hops, EdgeParameterRule rule) {
    switch (rule) {
        case EdgeParameterRule::kHops: return max_hops;
        case EdgeParameterRule::kHopsAtLeast1: return std::max(max_hops, 1);
        case EdgeParameterRule::kCoefficients: return max_hops + 1;
    }
    return max_hops;
}

} // namespace

std::int64_t parameter_count(int type_count, std::size_t edge_count, int max_hops, EdgeParameterRule rule) {
    return type_count + per_edge_parameters(max_hops, rule) * static_cast<std::int64_t>(edge_count);
}

double bic_penalty(std::int64_t parameter_count, std::int64_t event_count) {
    if (event_count <= 0) return 0.0;
    return static_cast<double>(parameter_count) * std::log(static_cast<double>(event_count)) / 2.0;
}

double type_bic_penalty(std::size_t parent_count, int max_hops, std::int64_t event_count, EdgeParameterRule rule) {
    return bic_penalty(1 + per_edge_parameters(max_hops, rule) * static_cast<std::int64_t>(parent_count),
                       event_count);
}

double bic_score(double log_lik, const CausalGraph& graph, int max_hops, std::int64_t event_count,
                 EdgeParameterRule rule) {
    return log_lik - bic_penalty(parameter_count(graph.type_count(), graph.edge_count(), max_hops, rule), event_count);
}

} // namespace thp
