// End-to-end benchmark: a full analysis pass over the replica campaign,
// the same workload the command line tool runs per invocation.

#include <benchmark/benchmark.h>

#include "cegb/report.hpp"
#include "cegb/synth.hpp"

using namespace cegb;

namespace {

void BM_analyze_replica(benchmark::State& state) {
  const Session session = gen_replica(42).session;
  AnalyzeOptions opt;
  opt.bootstrap_resamples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(analyze_session(session, opt));
  }
}
BENCHMARK(BM_analyze_replica)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_gen_replica(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(gen_replica(42));
  }
}
BENCHMARK(BM_gen_replica)->Unit(benchmark::kMillisecond);

void BM_report_json(benchmark::State& state) {
  const Report r = analyze_session(gen_replica(42).session);
  for (auto _ : state) {
    benchmark::DoNotOptimize(report_to_json(r));
  }
}
BENCHMARK(BM_report_json);

} // namespace
