#include <benchmark/benchmark.h>

#include <vector>

#include "lusin/compactification.hpp"

namespace {

using namespace lusin;

const CompactifiedSpace& half_line() {
  static const CompactifiedSpace c = *compactified::find("half-line");
  return c;
}

void BM_GValue(benchmark::State& state) {
  const Point x{static_cast<double>(state.range(0)) + 0.25};
  for (auto _ : state) benchmark::DoNotOptimize(g_value(half_line(), x));
}
BENCHMARK(BM_GValue)->Arg(1)->Arg(100)->Arg(10000);

void BM_DeltaMatrix(benchmark::State& state) {
  const auto& c = half_line();
  const std::vector<Point> pts = c.base().sampler(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) {
    double acc = 0.0;
    for (const Point& a : pts)
      for (const Point& b : pts) acc += c.delta(a, b);
    benchmark::DoNotOptimize(acc);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DeltaMatrix)->RangeMultiplier(4)->Range(16, 256)->Complexity();

void BM_CachedDeltaMatrix(benchmark::State& state) {
  const auto& c = half_line();
  const std::vector<Point> pts = c.base().sampler(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) {
    const DistanceOracle d = c.cached_delta_oracle();
    double acc = 0.0;
    for (const Point& a : pts)
      for (const Point& b : pts) acc += d(a, b);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_CachedDeltaMatrix)->RangeMultiplier(4)->Range(16, 256);

void BM_Net(benchmark::State& state) {
  const auto c = *compactified::find("two-ray");
  const double eps = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(total_boundedness_net(c, eps).net.size());
}
BENCHMARK(BM_Net)->Arg(2)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace
