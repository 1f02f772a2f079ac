// Serial reference against the OpenMP entry points on the workloads the CLI runs.
// Thread count follows OMP_NUM_THREADS.

#include "dhopf/cycle.hpp"
#include "dhopf/lindstedt.hpp"

#include <benchmark/benchmark.h>
#include <omp.h>

#include <vector>

namespace {

std::vector<double> sweep_grid() {
    std::vector<double> g;
    for (int i = 0; i < 25; ++i) {
        g.push_back(0.05 + 0.55 * i / 24.0);
    }
    return g;
}

const std::vector<double> kOnsetGrid{0.135, 0.140, 0.145, 0.150, 0.165, 0.188, 0.200, 0.300};

template <auto Fn>
void BM_sweep(benchmark::State& state) {
    const dhopf::TwoGeneParams p;
    const auto grid = sweep_grid();
    for (auto _ : state) {
        benchmark::DoNotOptimize(Fn(p, grid, dhopf::MeasureOptions::sweep()));
    }
    state.counters["threads"] = omp_get_max_threads();
}

template <auto Fn>
void BM_onset(benchmark::State& state) {
    const dhopf::TwoGeneParams p;
    for (auto _ : state) {
        benchmark::DoNotOptimize(Fn(p, kOnsetGrid, dhopf::MeasureOptions::onset()));
    }
    state.counters["threads"] = omp_get_max_threads();
}

template <auto Fn>
void BM_montecarlo(benchmark::State& state) {
    const dhopf::CriticalityRegion region;
    for (auto _ : state) {
        benchmark::DoNotOptimize(Fn(region, static_cast<std::uint64_t>(state.range(0)), 20240601));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
    state.counters["threads"] = omp_get_max_threads();
}

}  // namespace

BENCHMARK(BM_sweep<dhopf::sweep_bifurcation_serial>)->Name("sweep/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sweep<dhopf::sweep_bifurcation>)->Name("sweep/omp")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_onset<dhopf::onset_period_slope_serial>)->Name("onset/serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_onset<dhopf::onset_period_slope>)->Name("onset/omp")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_montecarlo<dhopf::montecarlo_criticality_serial>)
    ->Name("montecarlo/serial")->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_montecarlo<dhopf::montecarlo_criticality>)
    ->Name("montecarlo/omp")->Arg(4000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
