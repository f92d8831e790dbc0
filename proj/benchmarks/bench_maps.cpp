#include <benchmark/benchmark.h>

#include "odot/gallery.hpp"
#include "odot/horns.hpp"
#include "odot/maps.hpp"
#include "odot/shapes.hpp"

using namespace odot;

static void BM_EnumerateMaps(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const auto u = share(simplex(n));
  const auto p = share(simplex(n));
  std::size_t maps = 0;
  for (auto _ : state) maps = enumerate_maps(u, p, state.range(1) != 0).maps.size();
  state.counters["maps"] = static_cast<double>(maps);
}
BENCHMARK(BM_EnumerateMaps)->ArgsProduct({{1, 2, 3}, {0, 1}});

static void BM_AtomMaps(benchmark::State& state) {
  std::vector<PosetRef> atoms;
  for (const auto& e : atom_gallery({static_cast<std::size_t>(state.range(0)), 4}))
    atoms.push_back(share(e.molecule.poset));
  for (auto _ : state) {
    std::size_t total = 0;
    for (const auto& u : atoms)
      for (const auto& v : atoms) total += enumerate_maps(u, v, true).maps.size();
    benchmark::DoNotOptimize(total);
  }
}
BENCHMARK(BM_AtomMaps)->Arg(7)->Arg(9)->Unit(benchmark::kMillisecond);

static void BM_Cartesian(benchmark::State& state) {
  auto f = coconnection();
  for (auto _ : state) benchmark::DoNotOptimize(check_cartesian(f));
}
BENCHMARK(BM_Cartesian);

static void BM_Horns(benchmark::State& state) {
  const auto u = share(simplex(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_horns(u));
}
BENCHMARK(BM_Horns)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);
