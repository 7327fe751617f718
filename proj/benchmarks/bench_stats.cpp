// Microbenchmarks for the statistics kernels. The bootstrap dominates
// analysis time, so its cost per summary is the number to watch.

#include <vector>

#include <benchmark/benchmark.h>

#include "cegb/stats.hpp"

using namespace cegb;

namespace {

std::vector<double> sample(std::size_t n) {
  SeededRng rng(7);
  std::vector<double> v(n);
  for (double& x : v) x = 10.0 + rng.next_normal();
  return v;
}

void BM_quantile(benchmark::State& state) {
  const std::vector<double> v = sample(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(quantile(v, 0.5));
  }
}
BENCHMARK(BM_quantile)->Arg(100)->Arg(1000)->Arg(10000);

void BM_summarize(benchmark::State& state) {
  const std::vector<double> v = sample(static_cast<std::size_t>(state.range(0)));
  BootstrapConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(summarize(v, cfg));
  }
}
BENCHMARK(BM_summarize)->Arg(10)->Arg(50)->Arg(500);

void BM_wilson(benchmark::State& state) {
  std::uint64_t g = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(wilson_interval(g % 51, 50));
    ++g;
  }
}
BENCHMARK(BM_wilson);

void BM_next_normal(benchmark::State& state) {
  SeededRng rng(7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rng.next_normal());
  }
}
BENCHMARK(BM_next_normal);

void BM_mix_seed(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(mix_seed(42, "nist.slip.50"));
  }
}
BENCHMARK(BM_mix_seed);

} // namespace
