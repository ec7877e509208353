#include <benchmark/benchmark.h>

#include "pvalent/oracle.hpp"

namespace {

using namespace pvalent;

ClassParams bench_params() {
  ClassParams cp;
  cp.p = 2;
  cp.alpha = 0.5;
  cp.A = 0.8;
  cp.B = -0.5;
  cp.mu = 0.2;
  cp.delta = 0.7;
  return cp;
}

CoefficientSeries bench_series(const ClassParams& cp) {
  return make_series(cp.p, {{3, 0.5 * coeff_bound_r(3, cp)}, {5, 0.3 * coeff_bound_r(5, cp)}});
}

void subordination_scan(benchmark::State& state, Execution exec) {
  const auto cp = bench_params();
  const auto f = bench_series(cp);
  auto grid = SampleGrid::standard();
  grid.angles_per_radius = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(subordination_margin(f, cp, grid, exec).extremum);
  state.SetItemsProcessed(state.iterations() * grid.angles_per_radius * static_cast<long>(grid.radii.size()));
}

void starlike_scan(benchmark::State& state, Execution exec) {
  const auto cp = bench_params();
  const auto f = bench_series(cp);
  const int angles = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(starlike_min_re(f, 0.5, 0.9, angles, 2, exec).extremum);
  state.SetItemsProcessed(state.iterations() * angles);
}

}  // namespace

BENCHMARK_CAPTURE(subordination_scan, serial, Execution::Serial)->Arg(256)->Arg(4096);
BENCHMARK_CAPTURE(subordination_scan, parallel, Execution::Parallel)->Arg(256)->Arg(4096);
BENCHMARK_CAPTURE(starlike_scan, serial, Execution::Serial)->Arg(1024)->Arg(65536);
BENCHMARK_CAPTURE(starlike_scan, parallel, Execution::Parallel)->Arg(1024)->Arg(65536);

BENCHMARK_MAIN();
