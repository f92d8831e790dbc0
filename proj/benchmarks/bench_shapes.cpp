#include <benchmark/benchmark.h>

#include "odot/core.hpp"
#include "odot/gallery.hpp"
#include "odot/shapes.hpp"
#include "odot/tensor.hpp"

using namespace odot;

static void BM_Boundary(benchmark::State& state) {
  const auto p = cube(static_cast<int>(state.range(0)));
  for (auto _ : state)
    for (int n = 0; n < p.dim(); ++n) benchmark::DoNotOptimize(boundary(p, p.all(), Side::minus, n));
}
BENCHMARK(BM_Boundary)->DenseRange(2, 5);

static void BM_Isomorphism(benchmark::State& state) {
  const auto p = simplex(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(count_isomorphisms(p, p, 2));
}
BENCHMARK(BM_Isomorphism)->DenseRange(2, 5);

static void BM_Recognize(benchmark::State& state) {
  const auto p = cube(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(recognize_molecule(p));
}
BENCHMARK(BM_Recognize)->DenseRange(1, 4);

static void BM_Regular(benchmark::State& state) {
  const auto p = simplex(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(check_regular(p));
}
BENCHMARK(BM_Regular)->DenseRange(2, 5);

static void BM_Gray(benchmark::State& state) {
  const auto p = simplex(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gray(p, p));
}
BENCHMARK(BM_Gray)->DenseRange(1, 3);

static void BM_Gallery(benchmark::State& state) {
  const auto budget = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(molecule_gallery({budget, 4}));
}
BENCHMARK(BM_Gallery)->Arg(7)->Arg(9)->Arg(11)->Unit(benchmark::kMillisecond);
