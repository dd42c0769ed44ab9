#include <benchmark/benchmark.h>

#include "faberlab/curve.hpp"
#include "faberlab/faber.hpp"
#include "faberlab/laurent.hpp"

using namespace faberlab;

static void BM_EvaluatorDeltoid(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto map = ExteriorMap::deltoid();
  const auto ev = FaberEvaluator::for_map(map, n);
  const cplx z = map.boundary_point(1.0);
  std::vector<cplx> buf(n + 1);
  for (auto _ : state) {
    ev.evaluate(z, buf);
    benchmark::DoNotOptimize(buf.data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_EvaluatorDeltoid)->RangeMultiplier(4)->Range(16, 1024)->Complexity(benchmark::oN);

static void BM_FaberSequenceLune(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto series = laurent_coeffs(ExteriorMap::lune(), 2048);
  for (auto _ : state) benchmark::DoNotOptimize(faber_sequence(series, n));
}
BENCHMARK(BM_FaberSequenceLune)->Arg(32)->Arg(128);

static void BM_LaurentCoeffs(benchmark::State& state) {
  const auto map = ExteriorMap::lune();
  for (auto _ : state) benchmark::DoNotOptimize(laurent_coeffs(map, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_LaurentCoeffs)->Arg(256)->Arg(2048);
