#include <benchmark/benchmark.h>

#include "chase/engine.hpp"
#include "chase/experiments.hpp"
#include "chase/percolation.hpp"
#include "chase/theory.hpp"

using namespace chase;

static void BM_SampleGraph(benchmark::State& state) {
    const DegreeModel model = DegreeModel::regular(3);
    Rng rng = make_stream(1);
    for (auto _ : state) {
        const MultiGraph g = MultiGraph::sample(model, static_cast<int>(state.range(0)), rng);
        benchmark::DoNotOptimize(g.edge_count());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SampleGraph)->RangeMultiplier(4)->Range(1 << 8, 1 << 14)->Complexity();

static void BM_QuenchedRun(benchmark::State& state) {
    const DegreeModel model = DegreeModel::regular(3);
    Rng rng = make_stream(2);
    const double lambda = state.range(1) / 100.0;
    for (auto _ : state) {
        const MultiGraph g = MultiGraph::sample(model, static_cast<int>(state.range(0)), rng);
        const PassageTimes pt = PassageTimes::draw(g, lambda, rng);
        benchmark::DoNotOptimize(run_quenched(g, pt).range());
    }
}
BENCHMARK(BM_QuenchedRun)->Args({2000, 5})->Args({2000, 100})->Args({10000, 100});

static void BM_GillespieRun(benchmark::State& state) {
    const DegreeModel model = DegreeModel::regular(3);
    Rng rng = make_stream(3);
    for (auto _ : state) {
        const MultiGraph g = MultiGraph::sample(model, static_cast<int>(state.range(0)), rng);
        benchmark::DoNotOptimize(run_gillespie(g, 1.0, rng).range());
    }
}
BENCHMARK(BM_GillespieRun)->Arg(2000)->Arg(10000);

static void BM_PercolationPipeline(benchmark::State& state) {
    const DegreeModel model = DegreeModel::regular(3);
    Rng rng = make_stream(4);
    for (auto _ : state) {
        const MultiGraph g = MultiGraph::sample(model, static_cast<int>(state.range(0)), rng);
        const OpenMask mask = mark_open_direct(g, 20.0, rng);
        benchmark::DoNotOptimize(perc_report(g, mask, 0).largest_open_component);
    }
}
BENCHMARK(BM_PercolationPipeline)->Arg(10000)->Arg(100000);

static void BM_PathSurvival(benchmark::State& state) {
    Rng rng = make_stream(5);
    for (auto _ : state)
        benchmark::DoNotOptimize(run_path_reach(static_cast<int>(state.range(0)), 0.8, rng));
}
BENCHMARK(BM_PathSurvival)->Arg(10)->Arg(100);

static void BM_OpenProbability(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(open_probability(static_cast<int>(state.range(0)), 1.5));
}
BENCHMARK(BM_OpenProbability)->Arg(5)->Arg(25)->Arg(60);

BENCHMARK_MAIN();
