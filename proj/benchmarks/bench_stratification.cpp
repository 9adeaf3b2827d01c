#include <benchmark/benchmark.h>

#include <string>

#include "lusin/lusin_map.hpp"
#include "lusin/stratification.hpp"

namespace {

using namespace lusin;

const char* const kMaps[] = {"identity", "lollipop", "figure-eight", "spiral-lollipop"};

void BM_EscapeLimitSet(benchmark::State& state) {
  const MapInstance map = *maps::find(kMaps[state.range(0)]);
  const EscapeSampler sampler = EscapeSampler::all_branches(map);
  state.SetLabel(map.name);
  for (auto _ : state) benchmark::DoNotOptimize(escape_limit_set(map, sampler, 1e-2).clusters.size());
}
BENCHMARK(BM_EscapeLimitSet)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_Stratify(benchmark::State& state) {
  const MapInstance map = *maps::find(kMaps[state.range(0)]);
  StratifyOptions opt;
  opt.samples_per_branch = static_cast<std::size_t>(state.range(1));
  state.SetLabel(map.name);
  for (auto _ : state) benchmark::DoNotOptimize(stratify(map, opt).levels.size());
}
BENCHMARK(BM_Stratify)
    ->ArgsProduct({{1, 3}, {2000, 10000}})
    ->Unit(benchmark::kMillisecond);

}  // namespace
