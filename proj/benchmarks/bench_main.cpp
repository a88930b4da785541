#include <benchmark/benchmark.h>

#include <random>

#include "cubesaw/cube.hpp"
#include "cubesaw/expansion.hpp"
#include "cubesaw/lace.hpp"
#include "cubesaw/saw.hpp"

using namespace cubesaw;

static void BM_CountSaw(benchmark::State& state) {
  const Dim dim(static_cast<int>(state.range(0)));
  const int steps = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(count_saw(dim, steps));
}
BENCHMARK(BM_CountSaw)->Args({3, 7})->Args({4, 15})->Args({5, 8})->Unit(benchmark::kMillisecond);

static void BM_WalshDouble(benchmark::State& state) {
  const Dim dim(static_cast<int>(state.range(0)));
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CubeFn<double> f(dim);
  for (auto& v : f.values()) v = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(walsh_transform(f));
}
BENCHMARK(BM_WalshDouble)->DenseRange(10, 20, 5);

static void BM_WalshExact(benchmark::State& state) {
  const Dim dim(static_cast<int>(state.range(0)));
  const ExactCubeFn d = step_distribution(dim);
  for (auto _ : state) benchmark::DoNotOptimize(walsh_transform(d));
}
BENCHMARK(BM_WalshExact)->DenseRange(4, 12, 4);

static void BM_PiKDelta(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    for (int big_m = 1; big_m < k; ++big_m) benchmark::DoNotOptimize(pi_k_delta(k, 2, big_m));
  }
}
BENCHMARK(BM_PiKDelta)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

static void BM_ExpandZ(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(expand_z(order));
}
BENCHMARK(BM_ExpandZ)->DenseRange(3, 5, 1)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
