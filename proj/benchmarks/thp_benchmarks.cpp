#include "thp/em.hpp"
#include "thp/features.hpp"
#include "thp/search.hpp"
#include "thp/simulator.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace thp;

SimConfig config_for(std::int64_t events) {
    SimConfig c;
    c.node_count = 20;
    c.type_count = 10;
    c.target_event_count = events;
    c.seed = 1;
    return c;
}

struct Fixture {
    Benchmark bench;
    DiscreteDataset dataset;
};

Fixture make_fixture(std::int64_t events) {
    const SimConfig c = config_for(events);
    Benchmark b = generate_benchmark(c);
    DiscreteDataset d = discretize(b.events, c.node_count, c.type_count, c.bin_width, static_cast<double>(b.horizon_bins));
    return {std::move(b), std::move(d)};
}

void bm_simulate(benchmark::State& state) {
    const SimConfig c = config_for(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(generate_benchmark(c).events.size());
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_simulate)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);

void bm_build_features(benchmark::State& state) {
    const Fixture f = make_fixture(state.range(0));
    for (auto _ : state) {
        const auto cache = build_features(f.dataset, f.bench.topology, ExponentialKernel{0.11}, 2);
        benchmark::DoNotOptimize(cache.total(0, 0));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_build_features)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);

void bm_fit_type(benchmark::State& state) {
    const Fixture f = make_fixture(10000);
    const auto cache = build_features(f.dataset, f.bench.topology, ExponentialKernel{0.11}, 2);
    std::vector<int> parents;
    for (int p = 0; p < state.range(0); ++p) parents.push_back(p);
    for (auto _ : state) benchmark::DoNotOptimize(fit_type(cache, 0, parents, EmConfig{}).log_likelihood);
}
BENCHMARK(bm_fit_type)->Arg(0)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void bm_hill_climb(benchmark::State& state) {
    const Fixture f = make_fixture(5000);
    const auto cache = build_features(f.dataset, f.bench.topology, ExponentialKernel{0.11}, 2);
    for (auto _ : state) benchmark::DoNotOptimize(hill_climb(cache, SearchConfig{}).score);
}
BENCHMARK(bm_hill_climb)->Unit(benchmark::kMillisecond)->Iterations(1);

} // namespace

BENCHMARK_MAIN();
