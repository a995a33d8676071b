#include <benchmark/benchmark.h>

#include "mlext/grothendieck.hpp"
#include "mlext/search.hpp"

namespace {

void BM_InnerSphereMax(benchmark::State& state) {
  const auto set = mlext::extreme_points(mlext::make_shape(2, 3));
  mlext::SphereSearchOptions options;
  options.restarts = 16;
  const int d = static_cast<int>(state.range(0));
  std::size_t i = 0;
  for (auto _ : state) {
    auto r = mlext::inner_sphere_max(set[i++ % set.size()], d, options);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_InnerSphereMax)->DenseRange(1, 3)->Unit(benchmark::kMicrosecond);

}  // namespace
