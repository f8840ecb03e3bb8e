#pragma once

#include "thp/causal_graph.hpp"
#include "thp/features.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace thp {

/// Model parameters Θ = (μ, α).
///
/// `alpha` holds one vector of max_hops + 1 strengths per causal edge (cause, effect);
/// the hop-wise product of edge weight and kernel coefficient is folded into it.
struct ThpParams {
    int max_hops = 0;
    std::vector<double> mu;
    std::map<TypeEdge, std::vector<double>> alpha;

    // μ = 0 and a zero α vector for every edge of `graph`.
    static ThpParams zeros(const CausalGraph& graph, int max_hops);

    // α(cause, effect, hop), or 0 for edges without an entry.
    double strength(int cause, int effect, int hop) const;

    // Throws InvalidInput unless α keys are exactly the graph's edges, each with
    // max_hops + 1 entries, and every value is finite and non-negative.
    void validate(const CausalGraph& graph) const;

    friend bool operator==(const ThpParams&, const ThpParams&) = default;
};

/// The parameters one event type's likelihood depends on: μ_v and α over PA_v.
struct TypeParams {
    int type = 0;
    int max_hops = 0;
    double mu = 0.0;
    std::vector<int> parents;
    std::vector<double> alpha;  // [parent_index * (max_hops + 1) + hop]

    std::size_t hop_count() const { return static_cast<std::size_t>(max_hops) + 1; }
    double strength(std::size_t parent_index, int hop) const {
        return alpha[parent_index * hop_count() + static_cast<std::size_t>(hop)];
    }
};

TypeParams extract_type_params(const ThpParams& params, const CausalGraph& graph, int type);
void assign_type_params(ThpParams& params, const TypeParams& type_params);

// λ_v(n, t) at an occupied cell of the cache.
double type_intensity(const FeatureCache& cache, const TypeParams& params, std::size_t cell);

// λ_v(n, t) = μ_v + Σ_{v' ∈ PA_v} Σ_k α_{v',v,k} G_k[v'](n, t).
// Throws InvalidInput if (n, t) is not an occupied cell of the cache.
double intensity(const ThpParams& params, const CausalGraph& graph, const FeatureCache& cache, int node, int type,
                 std::int64_t bin);

// Contribution of type v: -Δt [μ_v |N||T| + Σ α T_k[v']] + Σ_occupied X log λ.
// Returns -infinity when λ = 0 at an observed cell.
double type_log_likelihood(const FeatureCache& cache, const TypeParams& params);

// Σ_v of type_log_likelihood, i.e. the discrete Poisson log-likelihood without
// the parameter-free constant Σ [X log Δt - log X!].
double log_likelihood(const ThpParams& params, const CausalGraph& graph, const FeatureCache& cache);

struct TypeGradient {
    double mu = 0.0;
    std::vector<double> alpha;  // same layout as TypeParams::alpha
};

// Analytic ∂L_v/∂μ_v and ∂L_v/∂α_{v',v,k}.
TypeGradient type_gradient(const FeatureCache& cache, const TypeParams& params);

/// How many free parameters each causal edge contributes to the BIC penalty.
enum class EdgeParameterRule {
    kHops,         // p = |V| + K |E|
    kHopsAtLeast1, // p = |V| + max(K, 1) |E|; equals kHops for K >= 1
    kCoefficients, // p = |V| + (K + 1) |E|
};

std::int64_t parameter_count(int type_count, std::size_t edge_count, int max_hops,
                             EdgeParameterRule rule = EdgeParameterRule::kHopsAtLeast1);

// p log(m) / 2; zero when m = 0.
double bic_penalty(std::int64_t parameter_count, std::int64_t event_count);

// Share of the penalty attributable to one event type with `parent_count` parents.
double type_bic_penalty(std::size_t parent_count, int max_hops, std::int64_t event_count,
                        EdgeParameterRule rule = EdgeParameterRule::kHopsAtLeast1);

// L_B = log_lik - p log(m) / 2.
double bic_score(double log_lik, const CausalGraph& graph, int max_hops, std::int64_t event_count,
                 EdgeParameterRule rule = EdgeParameterRule::kHopsAtLeast1);

} // namespace thp
