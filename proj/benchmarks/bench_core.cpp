#include <benchmark/benchmark.h>

#include "abcom/outage.hpp"
#include "abcom/scheduler.hpp"

namespace {

using namespace abcom;

ScenarioParams bench_params() {
  ScenarioParams p;
  p.T = 10.0;
  p.P_D = {1e-6};
  p.P_C = {1e-7};
  p.e_s = {5.0118723362727228e-07};
  p.f_s = 1000.0;
  p.B_w = 100.0;
  p.noise_rx = {1e-7};
  p.P_R = {3e-5};
  p.P_R_w = {1e-3};
  p.pathloss_up = {1.0, 2.0, 100.0};
  return p;
}

void BM_RegularizedLowerGamma(benchmark::State& state) {
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(regularized_lower_gamma(1.5, x));
    x = x < 20.0 ? x + 0.1 : 0.1;
  }
}
BENCHMARK(BM_RegularizedLowerGamma);

void BM_OutageProbability(benchmark::State& state) {
  const FadingParams f{static_cast<double>(state.range(0)), -0.115, 0.161, 0.7};
  for (auto _ : state) {
    benchmark::DoNotOptimize(outage_probability(1.0, f));
  }
}
BENCHMARK(BM_OutageProbability)->Arg(1)->Arg(4);

void BM_InvertThreshold(benchmark::State& state) {
  const FadingParams f{1.0, -0.115, 0.161, 0.7};
  for (auto _ : state) {
    benchmark::DoNotOptimize(invert_threshold(0.1, f, {1e-7}));
  }
}
BENCHMARK(BM_InvertThreshold);

void BM_NarrowGrid(benchmark::State& state) {
  const ScenarioParams p = bench_params();
  const GridSpec g{1.0 / static_cast<double>(state.range(0)), 0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        solve_narrow_grid(p, g, ConstraintVariant::SingleSensing));
  }
}
BENCHMARK(BM_NarrowGrid)->Arg(100)->Arg(1000);

void BM_WideGrid(benchmark::State& state) {
  const ScenarioParams p = bench_params();
  const GridSpec g{1.0 / static_cast<double>(state.range(0)), 0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_wide_grid(p, g));
  }
}
BENCHMARK(BM_WideGrid)->Arg(100)->Arg(1000);

void BM_MonteCarloOutage(benchmark::State& state) {
  const FadingParams f{1.0, -0.115, 0.161, 0.7};
  for (auto _ : state) {
    benchmark::DoNotOptimize(outage_monte_carlo(1.0, f, state.range(0), 7));
  }
}
BENCHMARK(BM_MonteCarloOutage)->Arg(10000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
