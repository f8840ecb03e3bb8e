#include "thp/error.hpp"
#include "thp/simulator.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace thp;

TEST_CASE("random causal graph is a DAG with the requested density") {
    double edges = 0.0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto g = random_causal_graph(10, 1.0, seed);
        CHECK(g.is_acyclic());
        edges += static_cast<double>(g.edge_count());
    }
    CHECK(edges / 50.0 == doctest::Approx(10.0).epsilon(0.2));
    CHECK(random_causal_graph(1, 1.0, 0).edge_count() == 0);
}

TEST_CASE("random topology is deterministic in the seed") {
    CHECK(random_topology(20, 2.0, 1, 3).edges() == random_topology(20, 2.0, 1, 3).edges());
    CHECK(random_topology(20, 0.0, 1, 3).edges().empty());
}

TEST_CASE("simulation with α = 0 has Poisson counts") {
    const CausalGraph g(2);
    const TopologyGraph topology(5, {{0, 1}, {1, 2}}, 1);
    ThpParams p = ThpParams::zeros(g, 1);
    p.mu = {0.02, 0.05};
    SimulationOptions opt;
    opt.horizon_bins = 2000;
    opt.bin_width = 0.5;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        opt.seed = seed;
        const auto r = simulate(g, topology, p, ExponentialKernel{}, opt);
        CHECK(r.horizon_bins == 2000);
        for (int v = 0; v < 2; ++v) {
            const double expected = p.mu[static_cast<std::size_t>(v)] * 5 * 2000 * 0.5;
            const auto observed = std::count_if(r.events.begin(), r.events.end(), [&](const EventRecord& e) { return e.event_type == v; });
            CHECK(std::abs(static_cast<double>(observed) - expected) <= 3.0 * std::sqrt(expected));
        }
    }
}

TEST_CASE("events are sorted and placed at bin centres") {
    const CausalGraph g(2, {{0, 1}});
    const TopologyGraph topology(3, {{0, 1}}, 1);
    ThpParams p = ThpParams::zeros(g, 1);
    p.mu = {0.05, 0.01};
    p.alpha[{0, 1}] = {0.05, 0.02};
    SimulationOptions opt;
    opt.horizon_bins = 300;
    opt.bin_width = 2.0;
    opt.seed = 8;
    const auto r = simulate(g, topology, p, ExponentialKernel{}, opt);
    REQUIRE_FALSE(r.events.empty());
    for (std::size_t i = 0; i < r.events.size(); ++i) {
        const double centre_offset = std::fmod(r.events[i].timestamp, 2.0);
        CHECK(centre_offset == doctest::Approx(1.0));
        if (i > 0) CHECK(r.events[i - 1].timestamp <= r.events[i].timestamp);
    }
    const auto again = simulate(g, topology, p, ExponentialKernel{}, opt);
    CHECK(again.events.size() == r.events.size());
}

TEST_CASE("exponential fast path matches the direct convolution") {
    // A non-exponential default kernel forces the direct path even though every edge
    // overrides it with the same exponential; mean counts over seeds must agree.
    const CausalGraph g(2, {{0, 1}, {1, 0}});
    const TopologyGraph topology(4, {{0, 1}, {1, 2}, {2, 3}}, 1);
    ThpParams p = ThpParams::zeros(g, 1);
    p.mu = {0.01, 0.01};
    p.alpha[{0, 1}] = {0.04, 0.03};
    p.alpha[{1, 0}] = {0.03, 0.02};
    SimulationOptions opt;
    opt.horizon_bins = 3000;
    double fast = 0, direct = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        opt.seed = seed;
        fast += static_cast<double>(simulate(g, topology, p, ExponentialKernel{0.2}, opt).events.size());
        direct += static_cast<double>(simulate(g, topology, p, GaussianKernel{10.0, 4.0}, opt,
                                               {{{0, 1}, ExponentialKernel{0.2}}, {{1, 0}, ExponentialKernel{0.2}}})
                                          .events.size());
    }
    CHECK(std::abs(fast - direct) / fast < 0.1);
}

TEST_CASE("explosive parameters throw") {
    const CausalGraph g(1, {{0, 0}});
    const TopologyGraph topology = TopologyGraph::isolated(1);
    ThpParams p = ThpParams::zeros(g, 0);
    p.mu = {1.0};
    p.alpha[{0, 0}] = {5.0};
    SimulationOptions opt;
    opt.horizon_bins = 100000;
    CHECK_THROWS_AS(simulate(g, topology, p, ExponentialKernel{0.11}, opt), ExplosionError);
}

TEST_CASE("generate_benchmark stops near the target") {
    SimConfig config;
    config.node_count = 10;
    config.type_count = 5;
    config.target_event_count = 2000;
    config.mu_range = {0.001, 0.002};
    config.seed = 2;
    const auto b = generate_benchmark(config);
    CHECK(b.events.size() >= 2000);
    CHECK(b.events.size() < 2100);
    CHECK(b.truth.is_acyclic());
    CHECK_FALSE(b.under_generated);
    CHECK_NOTHROW(b.params.validate(b.truth));

    config.target_event_count = 0;
    CHECK(generate_benchmark(config).events.empty());

    config.target_event_count = 10;
    config.node_count = 0;
    CHECK_THROWS_AS(generate_benchmark(config), InvalidInput);
}

TEST_CASE("non-exponential benchmark kernels are drawn per edge") {
    SimConfig config;
    config.node_count = 6;
    config.type_count = 4;
    config.target_event_count = 500;
    config.mu_range = {0.002, 0.004};
    config.kernel.family = KernelFamily::kUniform;
    config.seed = 3;
    const auto b = generate_benchmark(config);
    CHECK(b.kernels.size() == b.truth.edge_count());
    for (const auto& [edge, kernel] : b.kernels) {
        const auto* u = std::get_if<UniformKernel>(&kernel);
        REQUIRE(u != nullptr);
        CHECK(u->start >= 5.0);
        CHECK(u->start <= 15.0);
        CHECK(u->scale == 4.0);
    }
}
