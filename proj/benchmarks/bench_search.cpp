#include <benchmark/benchmark.h>

#include "mlext/search.hpp"

namespace {

void BM_PlanarExtremePoints(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  std::size_t count = 0;
  for (auto _ : state) {
    const auto set = mlext::planar_extreme_points(m);
    count = set.size();
    benchmark::DoNotOptimize(count);
  }
  state.counters["points"] = static_cast<double>(count);
}
BENCHMARK(BM_PlanarExtremePoints)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_ExtremePoints(benchmark::State& state) {
  const auto shape = mlext::make_shape(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  std::size_t count = 0;
  for (auto _ : state) {
    const auto set = mlext::extreme_points(shape);
    count = set.size();
    benchmark::DoNotOptimize(count);
  }
  state.counters["points"] = static_cast<double>(count);
}
BENCHMARK(BM_ExtremePoints)->Args({2, 2})->Args({3, 2})->Args({2, 3})->Unit(benchmark::kMillisecond);

void BM_IsExtreme(benchmark::State& state) {
  const auto set = mlext::extreme_points(mlext::make_shape(2, 3));
  std::size_t i = 0;
  for (auto _ : state) {
    auto cert = mlext::is_extreme(set[i++ % set.size()]);
    benchmark::DoNotOptimize(cert);
  }
}
BENCHMARK(BM_IsExtreme)->Unit(benchmark::kMicrosecond);

}  // namespace
