#pragma once

#include "thp/causal_graph.hpp"
#include "thp/features.hpp"
#include "thp/likelihood.hpp"

#include <cstdint>
#include <vector>

namespace thp {

struct EmConfig {
    int max_iterations = 100;
    double rel_tolerance = 1e-6;  // on |ΔL| / (|L| + 1)
    int restarts = 1;             // random initializations; 0 behaves like 1
    std::uint64_t init_seed = 0;

    void validate() const;
};

/// E-step attributions for the observed cells of one event type.
///
/// Per observation, `background` is q^μ and `excitation` holds the q^α mass
/// summed over source nodes and past bins, one entry per (parent, hop).
struct TypeResponsibilities {
    int type = 0;
    int max_hops = 0;
    std::vector<int> parents;
    std::vector<double> background;  // [observation]
    std::vector<double> excitation;  // [observation * parents * hops + parent * hops + hop]

    std::size_t stride() const { return parents.size() * (static_cast<std::size_t>(max_hops) + 1); }
};

struct Responsibilities {
    std::vector<TypeResponsibilities> per_type;
};

// Throws DegenerateModel when λ = 0 at an observed cell.
TypeResponsibilities type_e_step(const FeatureCache& cache, const TypeParams& params);
TypeParams type_m_step(const FeatureCache& cache, const TypeResponsibilities& resp);

Responsibilities e_step(const ThpParams& params, const CausalGraph& graph, const FeatureCache& cache);
ThpParams m_step(const Responsibilities& resp, const CausalGraph& graph, const FeatureCache& cache);

struct TypeFit {
    TypeParams params;
    double log_likelihood = 0.0;
    std::vector<double> trace;  // L before the first step, then after each step (best restart)
    int iterations = 0;
    bool converged = false;
};

// Random starting point: μ ~ U(0.5, 1.5) × empirical rate, α ~ U(0, 0.1).
TypeParams initial_type_params(const FeatureCache& cache, int type, const std::vector<int>& parents,
                               std::uint64_t seed);

// EM for the parameters of a single type with parent set `parents`. The seed of every
// restart is a pure function of (config.init_seed, type, parents, restart index).
TypeFit fit_type(const FeatureCache& cache, int type, const std::vector<int>& parents, const EmConfig& config);

struct FitResult {
    ThpParams params;
    double log_likelihood = 0.0;
    std::vector<TypeFit> per_type;
};

// Fits every type of `graph`; the likelihood decomposes so types are fitted independently.
FitResult fit(const CausalGraph& graph, const FeatureCache& cache, const EmConfig& config);

} // namespace thp
