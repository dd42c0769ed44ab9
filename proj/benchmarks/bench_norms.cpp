#include <benchmark/benchmark.h>

#include "faberlab/curve.hpp"
#include "faberlab/sweep.hpp"

using namespace faberlab;

static void BM_NormSweepDeltoid(benchmark::State& state) {
  const auto map = ExteriorMap::deltoid();
  const auto mesh = boundary_mesh(map, 1024, 8);
  std::vector<int> ns;
  for (int n = 300; n < 300 + state.range(0); ++n) ns.push_back(n);
  for (auto _ : state) benchmark::DoNotOptimize(faber_norm_sweep(map, ns, mesh).faber.size());
}
BENCHMARK(BM_NormSweepDeltoid)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_MeshBuild(benchmark::State& state) {
  const auto map = ExteriorMap::lune();
  for (auto _ : state) benchmark::DoNotOptimize(boundary_mesh(map, 1024, 8).size());
}
BENCHMARK(BM_MeshBuild);
