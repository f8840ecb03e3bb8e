#include "thp/simulator.hpp"

#include "thp/error.hpp"
#include "thp/random.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <random>
#include <sstream>

namespace thp {

CausalGraph random_causal_graph(int type_count, double avg_indegree, std::uint64_t seed) {
    if (!(avg_indegree >= 0.0)) throw InvalidInput("avg_indegree must be non-negative");
    CausalGraph graph(type_count);
    if (type_count < 2) return graph;
    std::mt19937_64 rng(seed);
    std::vector<int> order(static_cast<std::size_t>(type_count));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const double p = std::min(1.0, avg_indegree / ((type_count - 1) / 2.0));
    std::bernoulli_distribution keep(p);
    for (int i = 0; i < type_count; ++i) {
        for (int j = i + 1; j < type_count; ++j) {
            if (keep(rng)) graph.add_edge(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
        }
    }
    return graph;
}

TopologyGraph random_topology(int node_count, double avg_degree, int max_hops, std::uint64_t seed) {
    if (!(avg_degree >= 0.0)) throw InvalidInput("avg_degree must be non-negative");
    std::vector<NodeEdge> edges;
    if (node_count >= 2) {
        std::mt19937_64 rng(seed);
        std::bernoulli_distribution keep(std::min(1.0, avg_degree / (node_count - 1)));
        for (int a = 0; a < node_count; ++a) {
            for (int b = a + 1; b < node_count; ++b) {
                if (keep(rng)) edges.emplace_back(a, b);
            }
        }
    }
    return TopologyGraph(node_count, std::move(edges), max_hops);
}

namespace {

struct ChildLink {
    int effect;
    Matrix propagation;  // Σ_k α_k Â^k
    DecayKernel kernel;
};

struct RecentEvent {
    std::int64_t bin;
    int node;
    int type;
    double count;
};

class BinSampler {
public:
    BinSampler(const ThpParams& params, int nodes, double bin_width, double guard, std::uint64_t seed)
        : mu_(params.mu), nodes_(nodes), dt_(bin_width), guard_(guard), rng_(seed) {
        base_rate_ = static_cast<double>(nodes) * std::accumulate(mu_.begin(), mu_.end(), 0.0);
    }

    // Draws counts for one bin given excitation E(type, node); appends (node, type, count).
    void draw(const Matrix& excitation, bool active, std::int64_t bin, std::vector<RecentEvent>& out) {
        double rate = base_rate_;
        if (active) {
            rate += excitation.sum();
            const double peak = excitation.maxCoeff() + *std::max_element(mu_.begin(), mu_.end());
            if (!(peak * dt_ <= guard_)) {
                std::ostringstream os;
                os << "intensity explosion at bin " << bin << ": lambda*dt=" << peak * dt_ << " exceeds guard "
                   << guard_;
                throw ExplosionError(os.str());
            }
        }
        if (rate <= 0.0) return;
        // Independent per-cell Poissons, drawn as a Poisson total split multinomially.
        std::poisson_distribution<std::int64_t> total(rate * dt_);
        const std::int64_t n = total(rng_);
        if (n == 0) return;
        std::uniform_real_distribution<double> u(0.0, rate);
        const int types = static_cast<int>(mu_.size());
        const std::size_t first = out.size();
        for (std::int64_t e = 0; e < n; ++e) {
            double target = u(rng_);
            int chosen_type = types - 1;
            int chosen_node = nodes_ - 1;
            bool found = false;
            for (int v = 0; v < types && !found; ++v) {
                for (int node = 0; node < nodes_; ++node) {
                    target -= mu_[static_cast<std::size_t>(v)] + (active ? excitation(v, node) : 0.0);
                    if (target < 0.0) {
                        chosen_type = v;
                        chosen_node = node;
                        found = true;
                        break;
                    }
                }
            }
            auto it = std::find_if(out.begin() + static_cast<std::ptrdiff_t>(first), out.end(),
                                   [&](const RecentEvent& r) { return r.node == chosen_node && r.type == chosen_type; });
            if (it != out.end()) {
                it->count += 1.0;
            } else {
                out.push_back({bin, chosen_node, chosen_type, 1.0});
            }
        }
    }

private:
    std::vector<double> mu_;
    int nodes_;
    double dt_;
    double guard_;
    double base_rate_ = 0.0;
    std::mt19937_64 rng_;
};

} // namespace

SimulationResult simulate(const CausalGraph& graph, const TopologyGraph& topology, const ThpParams& params,
                          const DecayKernel& kernel, const SimulationOptions& options,
                          const EdgeKernels& edge_kernels) {
    params.validate(graph);
    validate(kernel);
    if (!(options.bin_width > 0.0)) throw InvalidInput("bin width must be positive");
    if (options.horizon_bins < 0) throw InvalidInput("horizon must be non-negative");
    if (params.max_hops > topology.max_hops()) {
        throw InvalidInput("parameters use more hops than the topology caches");
    }
    const int nodes = topology.node_count();
    const int types = graph.type_count();

    std::vector<std::vector<ChildLink>> children(static_cast<std::size_t>(types));
    bool recursive = std::holds_alternative<ExponentialKernel>(kernel);
    const double decay = recursive ? std::get<ExponentialKernel>(kernel).decay : 0.0;
    double max_lag = 0.0;
    for (const auto& [edge, strengths] : params.alpha) {
        Matrix propagation = Matrix::Zero(nodes, nodes);
        for (int k = 0; k <= params.max_hops; ++k) {
            propagation += strengths[static_cast<std::size_t>(k)] * topology.power(k);
        }
        const auto it = edge_kernels.find(edge);
        DecayKernel edge_kernel = it != edge_kernels.end() ? it->second : kernel;
        validate(edge_kernel);
        const auto* e = std::get_if<ExponentialKernel>(&edge_kernel);
        if (e == nullptr || e->decay != decay) recursive = false;
        max_lag = std::max(max_lag, support_end(edge_kernel));
        children[static_cast<std::size_t>(edge.first)].push_back({edge.second, std::move(propagation), edge_kernel});
    }

    SimulationResult result;
    BinSampler sampler(params, nodes, options.bin_width, options.explosion_guard, options.seed);
    Matrix excitation = Matrix::Zero(types, nodes);
    bool active = false;
    const double ratio = std::exp(-decay * options.bin_width);
    std::deque<RecentEvent> recent;
    std::vector<RecentEvent> current;
    std::int64_t emitted = 0;

    std::int64_t bin = 0;
    for (; bin < options.horizon_bins; ++bin) {
        if (!recursive) {
            while (!recent.empty() && static_cast<double>(bin - recent.front().bin) * options.bin_width > max_lag) {
                recent.pop_front();
            }
            active = !recent.empty();
            if (active) {
                excitation.setZero();
                for (const auto& ev : recent) {
                    const double lag = static_cast<double>(bin - ev.bin) * options.bin_width;
                    for (const auto& link : children[static_cast<std::size_t>(ev.type)]) {
                        const double w = evaluate(link.kernel, lag) * ev.count;
                        if (w > 0.0) excitation.row(link.effect) += w * link.propagation.row(ev.node);
                    }
                }
            }
        }

        current.clear();
        sampler.draw(excitation, active, bin, current);
        std::sort(current.begin(), current.end(), [](const RecentEvent& a, const RecentEvent& b) {
            return std::tie(a.node, a.type) < std::tie(b.node, b.type);
        });
        const double timestamp = (static_cast<double>(bin) + 0.5) * options.bin_width;
        for (const auto& ev : current) {
            for (int c = 0; c < static_cast<int>(ev.count); ++c) result.events.push_back({ev.node, ev.type, timestamp});
            emitted += static_cast<std::int64_t>(ev.count);
        }

        if (recursive) {
            // E(t + 1) = r (E(t) + Σ X M), the exponential summary recursion pushed through Â^k.
            if (active || !current.empty()) {
                for (const auto& ev : current) {
                    for (const auto& link : children[static_cast<std::size_t>(ev.type)]) {
                        excitation.row(link.effect) += ev.count * link.propagation.row(ev.node);
                    }
                }
                excitation *= ratio;
                active = excitation.maxCoeff() > 1e-300;
                if (!active) excitation.setZero();
            }
        } else {
            for (const auto& ev : current) {
                if (!children[static_cast<std::size_t>(ev.type)].empty()) recent.push_back(ev);
            }
        }

        if (options.stop_after_events >= 0 && emitted >= options.stop_after_events) {
            ++bin;
            break;
        }
    }
    result.horizon_bins = bin;
    return result;
}

void SimConfig::validate() const {
    if (node_count <= 0 || type_count <= 0) throw InvalidInput("node_count and type_count must be positive");
    if (target_event_count < 0) throw InvalidInput("target_event_count must be non-negative");
    if (!(avg_topology_degree >= 0.0) || !(avg_indegree >= 0.0)) throw InvalidInput("average degrees must be non-negative");
    auto check_range = [](const std::pair<double, double>& r, const char* name) {
        if (!(r.first >= 0.0) || !(r.first <= r.second) || !std::isfinite(r.second)) {
            throw InvalidInput(std::string(name) + " must satisfy 0 <= low <= high");
        }
    };
    check_range(mu_range, "mu_range");
    check_range(alpha_range, "alpha_range");
    if (max_hops < 0) throw InvalidInput("max_hops must be non-negative");
    if (!(bin_width > 0.0)) throw InvalidInput("bin_width must be positive");
    if (max_bins <= 0) throw InvalidInput("max_bins must be positive");
    if (kernel.family == KernelFamily::kExponential && !(kernel.decay > 0.0)) {
        throw InvalidInput("exponential decay must be positive");
    }
    if (kernel.family != KernelFamily::kExponential &&
        (!(kernel.width > 0.0) || !(kernel.location_range.first <= kernel.location_range.second))) {
        throw InvalidInput("kernel width must be positive and location_range ordered");
    }
}

Benchmark generate_benchmark(const SimConfig& config) {
    config.validate();
    Benchmark out{.events = {},
                  .truth = random_causal_graph(config.type_count, config.avg_indegree, derive_seed(config.seed, {2})),
                  .topology = random_topology(config.node_count, config.avg_topology_degree, config.max_hops,
                                              derive_seed(config.seed, {1})),
                  .params = {},
                  .kernels = {},
                  .horizon_bins = 1,
                  .under_generated = false};

    std::mt19937_64 rng(derive_seed(config.seed, {3}));
    std::uniform_real_distribution<double> mu(config.mu_range.first, config.mu_range.second);
    std::uniform_real_distribution<double> alpha(config.alpha_range.first, config.alpha_range.second);
    out.params = ThpParams::zeros(out.truth, config.max_hops);
    for (auto& m : out.params.mu) m = mu(rng);
    for (auto& [edge, values] : out.params.alpha) {
        for (auto& a : values) a = alpha(rng);
    }

    DecayKernel base = ExponentialKernel{config.kernel.decay};
    if (config.kernel.family != KernelFamily::kExponential) {
        std::mt19937_64 krng(derive_seed(config.seed, {4}));
        std::uniform_real_distribution<double> location(config.kernel.location_range.first,
                                                        config.kernel.location_range.second);
        for (const auto& edge : out.truth.edges()) {
            const double loc = location(krng);
            out.kernels[edge] = config.kernel.family == KernelFamily::kGaussian
                                    ? DecayKernel{GaussianKernel{loc, config.kernel.width}}
                                    : DecayKernel{UniformKernel{loc, config.kernel.width}};
        }
        base = config.kernel.family == KernelFamily::kGaussian
                   ? DecayKernel{GaussianKernel{config.kernel.location_range.first, config.kernel.width}}
                   : DecayKernel{UniformKernel{config.kernel.location_range.first, config.kernel.width}};
    }

    if (config.target_event_count == 0) return out;

    SimulationOptions options{.bin_width = config.bin_width,
                              .horizon_bins = config.max_bins,
                              .seed = derive_seed(config.seed, {5}),
                              .stop_after_events = config.target_event_count,
                              .explosion_guard = config.explosion_guard};
    SimulationResult sim = simulate(out.truth, out.topology, out.params, base, options, out.kernels);
    out.horizon_bins = std::max<std::int64_t>(sim.horizon_bins, 1);
    out.under_generated =
        static_cast<double>(sim.events.size()) < 0.9 * static_cast<double>(config.target_event_count);
    out.events = std::move(sim.events);
    return out;
}

} // namespace thp
