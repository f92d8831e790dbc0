#include <benchmark/benchmark.h>

#include "odot/nerve.hpp"
#include "odot/shapes.hpp"
#include "odot/tensor.hpp"

using namespace odot;

static void BM_Subdivide(benchmark::State& state) {
  const auto p = simplex(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(subdivide(p));
}
BENCHMARK(BM_Subdivide)->DenseRange(2, 5);

static void BM_Homology(benchmark::State& state) {
  const auto p = simplex(static_cast<int>(state.range(0)));
  const auto s = subdivide(p, boundary(p, p.all(), Side::both));
  for (auto _ : state) benchmark::DoNotOptimize(homology(s, p.dim()));
}
BENCHMARK(BM_Homology)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

static void BM_CompareProduct(benchmark::State& state) {
  const auto p = simplex(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(compare_product(p, p));
}
BENCHMARK(BM_CompareProduct)->DenseRange(1, 2)->Unit(benchmark::kMillisecond);
