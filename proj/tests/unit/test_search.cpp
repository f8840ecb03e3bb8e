#include "oracles.hpp"

#include "thp/search.hpp"
#include "thp/simulator.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace thp;

TEST_CASE("vicinity sizes") {
    // |V| = 2, one edge 0->1: add (0,0), (1,0), (1,1); delete (0,1); reverse (0,1).
    const CausalGraph g(2, {{0, 1}});
    const auto all = vicinity(g);
    CHECK(all.size() == 5);
    CHECK(all.front().move == Move{MoveKind::kAdd, 0, 0});
    // Empty graph on two types: four possible additions.
    CHECK(vicinity(CausalGraph(2)).size() == 4);
    // DAG-only drops self-loops and the 2-cycle.
    CHECK(vicinity(g, false).size() == 2);
}

TEST_CASE("vicinity candidates differ by exactly one move") {
    const CausalGraph g(3, {{0, 1}, {1, 2}, {2, 2}});
    for (const auto& c : vicinity(g)) {
        std::size_t diff = 0;
        for (const auto& e : c.graph.edges()) diff += g.has_edge(e.first, e.second) ? 0 : 1;
        for (const auto& e : g.edges()) diff += c.graph.has_edge(e.first, e.second) ? 0 : 1;
        CHECK(diff == (c.move.kind == MoveKind::kReverse ? 2u : 1u));
    }
}

TEST_CASE("incremental candidate score equals a full refit") {
    SimConfig sim;
    sim.node_count = 6;
    sim.type_count = 3;
    sim.target_event_count = 800;
    sim.mu_range = {0.002, 0.004};
    sim.alpha_range = {0.05, 0.1};
    sim.max_hops = 1;
    sim.seed = 4;
    const auto b = generate_benchmark(sim);
    const auto d = discretize(b.events, sim.node_count, sim.type_count, 1.0, static_cast<double>(b.horizon_bins));
    const auto cache = build_features(d, b.topology, ExponentialKernel{0.11}, 1);
    SearchConfig config;
    ScoreTable table(cache, config);
    SearchState state(table);
    state.move_to(CausalGraph(3, {{0, 1}}));
    for (const auto& c : vicinity(state.current()))
        CHECK(state.score_candidate(c.graph) == doctest::Approx(full_refit_score(c.graph, cache, config)).epsilon(1e-9));
}

TEST_CASE("hill climbing is monotone and ends at a local optimum") {
    SimConfig sim;
    sim.node_count = 8;
    sim.type_count = 4;
    sim.target_event_count = 1500;
    sim.mu_range = {0.001, 0.002};
    sim.alpha_range = {0.1, 0.2};
    sim.max_hops = 1;
    sim.seed = 11;
    const auto b = generate_benchmark(sim);
    const auto d = discretize(b.events, sim.node_count, sim.type_count, 1.0, static_cast<double>(b.horizon_bins));
    const auto cache = build_features(d, b.topology, ExponentialKernel{0.11}, 1);
    SearchConfig config;
    std::ostringstream progress, trace;
    config.progress = &progress;
    config.trace = &trace;
    const auto result = hill_climb(cache, config);
    for (std::size_t i = 1; i < result.trajectory.size(); ++i) CHECK(result.trajectory[i] > result.trajectory[i - 1]);
    CHECK(result.moves.size() + 1 == result.trajectory.size());
    CHECK(result.score == result.trajectory.back());

    ScoreTable table(cache, config);
    SearchState state(table);
    state.move_to(result.graph);
    CHECK(state.score() == doctest::Approx(result.score));
    for (const auto& c : vicinity(result.graph)) CHECK(state.score_candidate(c.graph) <= result.score);

    // Parallel scoring gives the same answer.
    config.threads = 3;
    config.progress = nullptr;
    config.trace = nullptr;
    const auto parallel = hill_climb(cache, config);
    CHECK(parallel.graph == result.graph);
    CHECK(parallel.score == result.score);
    CHECK_FALSE(progress.str().empty());
    CHECK(trace.str().find("\"round\"") != std::string::npos);
}

TEST_CASE("DAG-only search returns an acyclic graph") {
    const auto inst = oracle::random_instance(5, 3, 3, 40, 1);
    const auto cache = build_features(oracle::to_dataset(inst.counts, inst.dt), TopologyGraph(inst.nodes, inst.topo_edges, inst.max_hops),
                                      ExponentialKernel{inst.decay}, inst.max_hops);
    SearchConfig config;
    config.allow_cycles = false;
    CHECK(hill_climb(cache, config).graph.is_acyclic());
}

TEST_CASE("empty data stays at the empty graph") {
    const DiscreteDataset d(2, 2, 1.0, 10, {});
    const auto cache = build_features(d, TopologyGraph::isolated(2), ExponentialKernel{}, 0);
    const auto result = hill_climb(cache, SearchConfig{});
    CHECK(result.graph.edge_count() == 0);
    CHECK(result.rounds == 0);
}
