#include <benchmark/benchmark.h>

#include "semiaffine/acim.hpp"
#include "semiaffine/affine.hpp"
#include "semiaffine/sphere.hpp"
#include "semiaffine/stationary.hpp"

using namespace semiaffine;

static void BM_SphereAtoms(benchmark::State& state) {
  const auto params = SystemParams::make(0.5, 1.25);
  const auto nu = ShiftMeasure::bernoulli(0.6);
  const auto depth = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sphere_atoms(nu, 1.0, depth, params));
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << depth));
}
BENCHMARK(BM_SphereAtoms)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_Pushforward(benchmark::State& state) {
  const auto params = SystemParams::make(0.5, 1.25);
  const auto mu = GridMeasure::dirac(1.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tp_pushforward(mu, 0.6, params, 1));
}
BENCHMARK(BM_Pushforward)->Arg(1 << 12)->Arg(1 << 16)->Unit(benchmark::kMicrosecond);

static void BM_UlamDensity(benchmark::State& state) {
  const AcimSystem sys(SystemParams::parse("1/2", "3/2"), 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(ulam_density(sys, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_UlamDensity)->Arg(1024)->Arg(4096)->Unit(benchmark::kMillisecond);

static void BM_Coincidence(benchmark::State& state) {
  const auto params = SystemParams::parse("1/2", "4/3");
  for (auto _ : state) {
    benchmark::DoNotOptimize(coincidence_search(static_cast<std::size_t>(state.range(0)), params, 1));
  }
}
BENCHMARK(BM_Coincidence)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
