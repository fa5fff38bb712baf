#include <benchmark/benchmark.h>

#include "ftsm/charfn.hpp"
#include "ftsm/kernel.hpp"
#include "ftsm/measure.hpp"
#include "ftsm/rng.hpp"
#include "ftsm/series.hpp"

using namespace ftsm;

static void BM_philox_u01(benchmark::State& state) {
  rng::CounterRng gen(42, rng::stream_id(0, rng::kStreamUnif));
  for (auto _ : state) benchmark::DoNotOptimize(gen.next_u01());
}
BENCHMARK(BM_philox_u01);

static void BM_kernel_eval(benchmark::State& state) {
  const auto kp = make_kernel_params(0.8, 1.6);
  double s = 0.0;
  for (auto _ : state) {
    s += 1e-9;
    benchmark::DoNotOptimize(kernel_eval(kp, 1.0, 0.37 + s));
  }
}
BENCHMARK(BM_kernel_eval);

static void BM_make_driver(benchmark::State& state) {
  const auto rho = InnerMeasure::rho2(1.6);
  std::uint64_t rep = 0;
  for (auto _ : state) {
    auto drv = make_driver(7, rep++, 1.0, state.range(0), rho, 1.6);
    benchmark::DoNotOptimize(drv.gammas.back());
  }
}
BENCHMARK(BM_make_driver)->Arg(500)->Arg(2000);

static void BM_simulate_ftsm(benchmark::State& state) {
  const auto kp = make_kernel_params(0.8, 1.6);
  const auto rho = InnerMeasure::rho2(1.6);
  const auto sc = series_constants(rho, 1.6, 1.0);
  std::vector<double> grid(16);
  for (int i = 0; i < 16; ++i) grid[i] = (i + 1) / 16.0;
  const auto plan = make_tail_plan(kp, grid);
  std::uint64_t rep = 0;
  for (auto _ : state) {
    auto drv = make_driver(7, rep++, 1.0, state.range(0), rho, 1.6);
    auto p = simulate_ftsm(drv, kp, sc, grid, TailMode::gaussian, &plan);
    benchmark::DoNotOptimize(p.values.back());
  }
}
BENCHMARK(BM_simulate_ftsm)->Arg(500)->Arg(2000);

static void BM_cf_ftsm(benchmark::State& state) {
  const auto kp = make_kernel_params(0.8, 1.6);
  const auto rho = InnerMeasure::rho2(1.6);
  for (auto _ : state) benchmark::DoNotOptimize(cf_ftsm(1.0, 1.0, kp, rho));
}
BENCHMARK(BM_cf_ftsm);

BENCHMARK_MAIN();
