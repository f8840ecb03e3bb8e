#include "oracles.hpp"

#include "thp/error.hpp"
#include "thp/likelihood.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

using namespace thp;

namespace {

struct Built {
    DiscreteDataset dataset;
    TopologyGraph topology;
    FeatureCache cache;
};

Built build(const oracle::TinyInstance& inst) {
    DiscreteDataset d = oracle::to_dataset(inst.counts, inst.dt);
    TopologyGraph topology(inst.nodes, inst.topo_edges, inst.max_hops);
    FeatureCache cache = build_features(d, topology, ExponentialKernel{inst.decay}, inst.max_hops);
    return {std::move(d), std::move(topology), std::move(cache)};
}

} // namespace

TEST_CASE("intensity with one parent and one prior event") {
    // Type 0 fires at bin 9, type 1 fires at bin 10 on the same node.
    const DiscreteDataset d(1, 2, 1.0, 20, {{0, 0, 9, 1}, {0, 1, 10, 1}});
    const auto cache = build_features(d, TopologyGraph::isolated(1), ExponentialKernel{0.11}, 0);
    const CausalGraph g(2, {{0, 1}});
    ThpParams p = ThpParams::zeros(g, 0);
    p.mu = {0.0001, 0.0001};
    p.alpha[{0, 1}] = {0.05};
    CHECK(intensity(p, g, cache, 0, 1, 10) == doctest::Approx(0.0001 + 0.05 * 0.8958341352965282).epsilon(1e-12));
    CHECK(intensity(p, g, cache, 0, 1, 10) == doctest::Approx(0.04489).epsilon(1e-4));
    CHECK_THROWS_AS(intensity(p, g, cache, 0, 1, 11), InvalidInput);
}

TEST_CASE("log-likelihood matches the brute-force oracle") {
    for (std::uint64_t seed = 100; seed < 140; ++seed) {
        const auto inst = oracle::random_instance(seed);
        const auto b = build(inst);
        const auto powers = oracle::naive_powers(oracle::naive_normalized(oracle::dense_adjacency(inst.nodes, inst.topo_edges)), inst.max_hops);
        const double expected = oracle::log_likelihood(inst.counts, powers, inst.decay, inst.dt, inst.graph, inst.params);
        const double got = log_likelihood(oracle::to_params(inst.params, inst.graph, inst.max_hops), inst.graph, b.cache);
        CHECK(std::abs(got - expected) <= 1e-9 * std::max(1.0, std::abs(expected)));
    }
}

TEST_CASE("zero intensity at an observed cell gives -infinity") {
    const DiscreteDataset d(1, 1, 1.0, 5, {{0, 0, 2, 1}});
    const auto cache = build_features(d, TopologyGraph::isolated(1), ExponentialKernel{}, 0);
    const CausalGraph g(1);
    ThpParams p = ThpParams::zeros(g, 0);
    CHECK(log_likelihood(p, g, cache) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("empty dataset with μ > 0 has likelihood -Δt Σ μ |N||T|") {
    const DiscreteDataset d(3, 2, 0.5, 10, {});
    const auto cache = build_features(d, TopologyGraph::isolated(3), ExponentialKernel{}, 0);
    const CausalGraph g(2);
    ThpParams p = ThpParams::zeros(g, 0);
    p.mu = {0.2, 0.3};
    CHECK(log_likelihood(p, g, cache) == doctest::Approx(-0.5 * (0.2 + 0.3) * 30));
}

TEST_CASE("gradient agrees with central finite differences") {
    for (std::uint64_t seed = 200; seed < 215; ++seed) {
        const auto inst = oracle::random_instance(seed);
        const auto b = build(inst);
        const ThpParams params = oracle::to_params(inst.params, inst.graph, inst.max_hops);
        for (int v = 0; v < inst.types; ++v) {
            TypeParams tp = extract_type_params(params, inst.graph, v);
            const auto grad = type_gradient(b.cache, tp);
            auto check = [&](double& value, double analytic) {
                const double x = value;
                const double h = 1e-6 * std::max(std::abs(x), 1e-3);
                value = x + h;
                const double up = type_log_likelihood(b.cache, tp);
                value = x - h;
                const double down = type_log_likelihood(b.cache, tp);
                value = x;
                const double numeric = (up - down) / (2 * h);
                CHECK(std::abs(numeric - analytic) <= 1e-5 * std::max(1.0, std::abs(analytic)));
            };
            check(tp.mu, grad.mu);
            for (std::size_t i = 0; i < tp.alpha.size(); ++i) check(tp.alpha[i], grad.alpha[i]);
        }
    }
}

TEST_CASE("type params round trip") {
    const auto inst = oracle::random_instance(7);
    const ThpParams params = oracle::to_params(inst.params, inst.graph, inst.max_hops);
    ThpParams copy = ThpParams::zeros(inst.graph, inst.max_hops);
    for (int v = 0; v < inst.types; ++v) assign_type_params(copy, extract_type_params(params, inst.graph, v));
    CHECK(copy == params);
}

TEST_CASE("BIC penalty") {
    // |V| = 20, |E| = 0, m = 20000.
    CHECK(bic_penalty(parameter_count(20, 0, 2), 20000) == doctest::Approx(99.03).epsilon(1e-4));
    // One more edge at K = 2 costs 2 log(20000) / 2.
    const double delta = bic_penalty(parameter_count(20, 1, 2), 20000) - bic_penalty(parameter_count(20, 0, 2), 20000);
    CHECK(delta == doctest::Approx(9.903).epsilon(1e-4));
    CHECK(bic_penalty(10, 0) == 0.0);
    CHECK(parameter_count(5, 3, 0, EdgeParameterRule::kHops) == 5);
    CHECK(parameter_count(5, 3, 0) == 8);
    CHECK(parameter_count(5, 3, 2, EdgeParameterRule::kCoefficients) == 14);
    // Per-type shares add up to the whole penalty.
    const CausalGraph g(4, {{0, 1}, {2, 1}, {3, 3}});
    double shares = 0.0;
    for (int v = 0; v < 4; ++v) shares += type_bic_penalty(g.parents(v).size(), 2, 500);
    CHECK(shares == doctest::Approx(bic_penalty(parameter_count(4, 3, 2), 500)));
    CHECK(bic_score(-10.0, g, 2, 500) == doctest::Approx(-10.0 - shares));
}

TEST_CASE("params validation") {
    const CausalGraph g(2, {{0, 1}});
    ThpParams p = ThpParams::zeros(g, 1);
    p.mu = {0.1, 0.1};
    CHECK_NOTHROW(p.validate(g));
    p.alpha[{0, 1}] = {0.1};
    CHECK_THROWS_AS(p.validate(g), InvalidInput);
    p.alpha[{0, 1}] = {0.1, -0.1};
    CHECK_THROWS_AS(p.validate(g), InvalidInput);
    p.alpha[{0, 1}] = {0.1, 0.1};
    p.alpha[{1, 0}] = {0.1, 0.1};
    CHECK_THROWS_AS(p.validate(g), InvalidInput);
}
