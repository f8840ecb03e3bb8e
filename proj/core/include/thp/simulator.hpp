#pragma once

#include "thp/causal_graph.hpp"
#include "thp/event_data.hpp"
#include "thp/kernels.hpp"
#include "thp/likelihood.hpp"
#include "thp/topology.hpp"

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace thp {

// Random DAG: shuffle the types, then keep each forward pair with probability
// avg_indegree / ((|V| - 1) / 2), capped at 1.
CausalGraph random_causal_graph(int type_count, double avg_indegree, std::uint64_t seed);

// Erdős–Rényi graph with edge probability avg_degree / (|N| - 1), capped at 1.
TopologyGraph random_topology(int node_count, double avg_degree, int max_hops, std::uint64_t seed);

// Kernel override per causal edge; edges without an entry use the default kernel.
using EdgeKernels = std::map<TypeEdge, DecayKernel>;

struct SimulationOptions {
    double bin_width = 1.0;
    std::int64_t horizon_bins = 1;
    std::uint64_t seed = 0;
    std::int64_t stop_after_events = -1;  // stop at the end of the first bin reaching this total
    double explosion_guard = 1e6;         // max λ·Δt per cell
};

struct SimulationResult {
    std::vector<EventRecord> events;  // timestamps at bin centres, sorted by time
    std::int64_t horizon_bins = 0;    // bins actually simulated
};

/// Discrete-time THP simulation: X[n, v, t] ~ Poisson(λ_v(n, t) Δt) given all earlier bins.
///
/// Uses the exponential summary recursion when every edge kernel is exponential with one
/// common decay, and a truncated direct convolution otherwise. Throws ExplosionError naming the
/// bin when λ·Δt exceeds the guard.
SimulationResult simulate(const CausalGraph& graph, const TopologyGraph& topology, const ThpParams& params,
                          const DecayKernel& kernel, const SimulationOptions& options,
                          const EdgeKernels& edge_kernels = {});

enum class KernelFamily { kExponential, kGaussian, kUniform };

/// Kernel family for generated benchmarks. Gaussian means and uniform starts are drawn
/// per edge from location_range; `width` is the Gaussian stddev or the uniform scale.
struct KernelSpec {
    KernelFamily family = KernelFamily::kExponential;
    double decay = 0.11;
    std::pair<double, double> location_range{5.0, 15.0};
    double width = 4.0;
};

struct SimConfig {
    int node_count = 40;
    double avg_topology_degree = 1.5;
    int type_count = 20;
    double avg_indegree = 1.0;
    std::int64_t target_event_count = 20000;
    std::pair<double, double> mu_range{0.00005, 0.0001};
    std::pair<double, double> alpha_range{0.03, 0.05};
    KernelSpec kernel;
    int max_hops = 2;
    double bin_width = 1.0;
    std::uint64_t seed = 0;
    std::int64_t max_bins = 10'000'000;
    double explosion_guard = 1e6;

    void validate() const;
};

struct Benchmark {
    std::vector<EventRecord> events;
    CausalGraph truth;
    TopologyGraph topology;
    ThpParams params;
    EdgeKernels kernels;
    std::int64_t horizon_bins = 0;
    bool under_generated = false;  // bin cap hit before reaching 90% of the target
};

Benchmark generate_benchmark(const SimConfig& config);

} // namespace thp
