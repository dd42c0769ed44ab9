#include <benchmark/benchmark.h>

#include "faberlab/chebyshev.hpp"
#include "faberlab/curve.hpp"

using namespace faberlab;

static void BM_ChebyshevDeltoid(benchmark::State& state) {
  const auto map = ExteriorMap::deltoid();
  const auto mesh = boundary_mesh(map, 512, 6);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(chebyshev_monic(map, n, mesh).widom);
}
BENCHMARK(BM_ChebyshevDeltoid)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_ChebyshevEllipse(benchmark::State& state) {
  const auto map = ExteriorMap::ellipse(0.5);
  const auto mesh = boundary_mesh(map, 512, 0);
  for (auto _ : state) benchmark::DoNotOptimize(chebyshev_monic(map, 10, mesh).widom);
}
BENCHMARK(BM_ChebyshevEllipse)->Unit(benchmark::kMillisecond);
