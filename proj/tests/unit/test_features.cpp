#include "oracles.hpp"

#include "thp/error.hpp"
#include "thp/features.hpp"

#include <doctest.h>

using namespace thp;

namespace {

TopologyGraph topology_of(const oracle::TinyInstance& inst) { return TopologyGraph(inst.nodes, inst.topo_edges, inst.max_hops); }

} // namespace

TEST_CASE("single event one bin earlier gives feature exp(-δΔt)") {
    const DiscreteDataset d(1, 1, 1.0, 10, {{0, 0, 4, 1}, {0, 0, 5, 1}});
    const auto cache = build_features(d, TopologyGraph::isolated(1), ExponentialKernel{0.11}, 0);
    const auto cell = cache.find_cell(0, 5);
    REQUIRE(cell.has_value());
    CHECK(cache.feature(0, 0, *cell) == doctest::Approx(0.8958341352965282).epsilon(1e-14));
    CHECK(cache.feature(0, 0, *cache.find_cell(0, 4)) == 0.0);
    CHECK_FALSE(cache.find_cell(0, 6).has_value());
}

TEST_CASE("features and totals match the brute-force oracle") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto inst = oracle::random_instance(seed);
        const auto topology = topology_of(inst);
        const auto powers = oracle::naive_powers(oracle::naive_normalized(oracle::dense_adjacency(inst.nodes, inst.topo_edges)), inst.max_hops);
        const auto cache = build_features(oracle::to_dataset(inst.counts, inst.dt), topology, ExponentialKernel{inst.decay}, inst.max_hops);
        for (int cause = 0; cause < inst.types; ++cause)
            for (int k = 0; k <= inst.max_hops; ++k) {
                for (std::size_t c = 0; c < cache.cells().size(); ++c) {
                    const auto& cell = cache.cells()[c];
                    const double expected = oracle::feature(inst.counts, powers, inst.decay, inst.dt, cause, k, cell.node, static_cast<int>(cell.bin));
                    CHECK(oracle::relative_error(cache.feature(cause, k, c), expected) < 1e-12);
                }
                double total = 0.0;
                for (int n = 0; n < inst.nodes; ++n)
                    for (int t = 0; t < inst.bins; ++t) total += oracle::feature(inst.counts, powers, inst.decay, inst.dt, cause, k, n, t);
                CHECK(oracle::relative_error(cache.total(cause, k), total) < 1e-12);
            }
    }
}

TEST_CASE("features are non-negative and hop 0 sees only the node itself") {
    const DiscreteDataset d(3, 1, 1.0, 5, {{0, 0, 0, 2}, {1, 0, 3, 1}});
    const TopologyGraph topology(3, {{0, 1}}, 1);
    const auto cache = build_features(d, topology, ExponentialKernel{0.5}, 1);
    const auto at_1 = *cache.find_cell(1, 3);
    CHECK(cache.feature(0, 0, at_1) == 0.0);
    CHECK(cache.feature(0, 1, at_1) == doctest::Approx(2.0 * std::exp(-1.5)));
    for (double f : cache.feature(0, 1)) CHECK(f >= 0.0);
}

TEST_CASE("build_features rejects unsupported kernels and mismatched inputs") {
    const DiscreteDataset d(2, 1, 1.0, 5, {});
    CHECK_THROWS_AS(build_features(d, TopologyGraph::isolated(2), GaussianKernel{}, 0), UnsupportedKernel);
    CHECK_THROWS_AS(build_features(d, TopologyGraph::isolated(3), ExponentialKernel{}, 0), InvalidInput);
    CHECK_THROWS_AS(build_features(d, TopologyGraph::isolated(2, 1), ExponentialKernel{}, 2), InvalidInput);
}

TEST_CASE("empty dataset gives an empty cache with zero totals") {
    const DiscreteDataset d(2, 2, 1.0, 5, {});
    const auto cache = build_features(d, TopologyGraph(2, {{0, 1}}, 1), ExponentialKernel{}, 1);
    CHECK(cache.cells().empty());
    CHECK(cache.total(1, 1) == 0.0);
    CHECK(cache.total_events() == 0);
}
