#include "thp/em.hpp"

#include "thp/error.hpp"
#include "thp/random.hpp"

#include <cmath>
#include <random>

namespace thp {

void EmConfig::validate() const {
    if (max_iterations < 1) throw InvalidInput("em.max_iterations must be at least 1");
    if (!(rel_tolerance > 0.0)) throw InvalidInput("em.rel_tolerance must be positive");
    if (restarts < 0) throw InvalidInput("em.restarts must be non-negative");
}

TypeResponsibilities type_e_step(const FeatureCache& cache, const TypeParams& params) {
    TypeResponsibilities resp;
    resp.type = params.type;
    resp.max_hops = params.max_hops;
    resp.parents = params.parents;
    const auto obs = cache.observations(params.type);
    const std::size_t stride = resp.stride();
    const std::size_t hops = params.hop_count();
    resp.background.resize(obs.size());
    resp.excitation.assign(obs.size() * stride, 0.0);

    for (std::size_t i = 0; i < obs.size(); ++i) {
        const double lambda = type_intensity(cache, params, obs[i].cell);
        if (!(lambda > 0.0)) {
            const auto& c = cache.cells()[obs[i].cell];
            throw DegenerateModel("zero intensity for type " + std::to_string(params.type) + " at node " +
                                  std::to_string(c.node) + ", bin " + std::to_string(c.bin));
        }
        resp.background[i] = params.mu / lambda;
        double* row = resp.excitation.data() + i * stride;
        for (std::size_t p = 0; p < params.parents.size(); ++p) {
            for (std::size_t k = 0; k < hops; ++k) {
                row[p * hops + k] = params.alpha[p * hops + k] *
                                    cache.feature(params.parents[p], static_cast<int>(k), obs[i].cell) / lambda;
            }
        }
    }
    return resp;
}

TypeParams type_m_step(const FeatureCache& cache, const TypeResponsibilities& resp) {
    TypeParams out;
    out.type = resp.type;
    out.max_hops = resp.max_hops;
    out.parents = resp.parents;
    const auto obs = cache.observations(resp.type);
    const std::size_t stride = resp.stride();
    const std::size_t hops = out.hop_count();
    if (resp.background.size() != obs.size() || resp.excitation.size() != obs.size() * stride) {
        throw InvalidInput("responsibilities do not match the cache's observations");
    }

    double background_mass = 0.0;
    std::vector<double> excitation_mass(stride, 0.0);
    for (std::size_t i = 0; i < obs.size(); ++i) {
        const auto x = static_cast<double>(obs[i].count);
        background_mass += resp.background[i] * x;
        const double* row = resp.excitation.data() + i * stride;
        for (std::size_t j = 0; j < stride; ++j) excitation_mass[j] += row[j] * x;
    }

    const double dt = cache.bin_width();
    out.mu = background_mass /
             (static_cast<double>(cache.node_count()) * static_cast<double>(cache.horizon_bins()) * dt);
    out.alpha.assign(stride, 0.0);
    for (std::size_t p = 0; p < out.parents.size(); ++p) {
        for (std::size_t k = 0; k < hops; ++k) {
            const double exposure = cache.total(out.parents[p], static_cast<int>(k)) * dt;
            out.alpha[p * hops + k] = exposure > 0.0 ? excitation_mass[p * hops + k] / exposure : 0.0;
        }
    }
    return out;
}

Responsibilities e_step(const ThpParams& params, const CausalGraph& graph, const FeatureCache& cache) {
    params.validate(graph);
    Responsibilities resp;
    for (int v = 0; v < graph.type_count(); ++v) {
        resp.per_type.push_back(type_e_step(cache, extract_type_params(params, graph, v)));
    }
    return resp;
}

ThpParams m_step(const Responsibilities& resp, const CausalGraph& graph, const FeatureCache& cache) {
    ThpParams out = ThpParams::zeros(graph, cache.max_hops());
    for (const auto& r : resp.per_type) {
        if (r.parents != graph.parents(r.type)) {
            throw InvalidInput("responsibilities for type " + std::to_string(r.type) +
                               " were computed for a different parent set");
        }
        assign_type_params(out, type_m_step(cache, r));
    }
    return out;
}

TypeParams initial_type_params(const FeatureCache& cache, int type, const std::vector<int>& parents,
                               std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> mu_scale(0.5, 1.5);
    std::uniform_real_distribution<double> strength(0.0, 0.1);

    TypeParams tp;
    tp.type = type;
    tp.max_hops = cache.max_hops();
    tp.parents = parents;
    const double exposure =
        static_cast<double>(cache.node_count()) * static_cast<double>(cache.horizon_bins()) * cache.bin_width();
    tp.mu = mu_scale(rng) * static_cast<double>(cache.type_total(type)) / exposure;
    tp.alpha.resize(parents.size() * tp.hop_count());
    for (auto& a : tp.alpha) a = strength(rng);
    return tp;
}

namespace {

TypeFit run_em(const FeatureCache& cache, TypeParams params, const EmConfig& config) {
    TypeFit fit;
    double previous = type_log_likelihood(cache, params);
    fit.trace.push_back(previous);
    for (int it = 1; it <= config.max_iterations; ++it) {
        params = type_m_step(cache, type_e_step(cache, params));
        const double current = type_log_likelihood(cache, params);
        fit.trace.push_back(current);
        fit.iterations = it;
        const bool done = std::abs(current - previous) / (std::abs(current) + 1.0) < config.rel_tolerance;
        previous = current;
        if (done) {
            fit.converged = true;
            break;
        }
    }
    fit.params = std::move(params);
    fit.log_likelihood = previous;
    return fit;
}

} // namespace

TypeFit fit_type(const FeatureCache& cache, int type, const std::vector<int>& parents, const EmConfig& config) {
    config.validate();
    if (type < 0 || type >= cache.type_count()) throw InvalidInput("event type outside the cache's universe");
    std::vector<int> key;
    key.reserve(parents.size() + 1);
    key.push_back(type);
    key.insert(key.end(), parents.begin(), parents.end());
    const std::uint64_t base = derive_seed(config.init_seed, key);

    const int runs = std::max(config.restarts, 1);
    TypeFit best;
    for (int r = 0; r < runs; ++r) {
        TypeFit candidate =
            run_em(cache, initial_type_params(cache, type, parents, derive_seed(base, {static_cast<std::uint64_t>(r)})),
                   config);
        if (r == 0 || candidate.log_likelihood > best.log_likelihood) best = std::move(candidate);
    }
    return best;
}

FitResult fit(const CausalGraph& graph, const FeatureCache& cache, const EmConfig& config) {
    if (graph.type_count() != cache.type_count()) throw InvalidInput("graph and cache disagree on the type count");
    FitResult result;
    result.params = ThpParams::zeros(graph, cache.max_hops());
    for (int v = 0; v < graph.type_count(); ++v) {
        result.per_type.push_back(fit_type(cache, v, graph.parents(v), config));
        assign_type_params(result.params, result.per_type.back().params);
        result.log_likelihood += result.per_type.back().log_likelihood;
    }
    return result;
}

} // namespace thp
