// Microbenchmarks for trace processing: smoothing, integration, slip
// detection and phase inference on realistic 500 Hz traces.

#include <cmath>

#include <benchmark/benchmark.h>

#include "cegb/model.hpp"
#include "cegb/signal.hpp"

using namespace cegb;

namespace {

// Ramp, plateau, sustained drop; the shape every slip trial has.
SampledTrace load_trace(std::size_t n) {
  SampledTrace tr;
  tr.kind = TraceKind::Tangential;
  const double dt = 1.0 / 500.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) * dt;
    double f = 4.0 * t;
    if (f > 6.0) f = 6.0;
    if (t > 0.8 * static_cast<double>(n) * dt) f = 1.8;
    tr.samples.push_back({t, f, 0});
  }
  return tr;
}

// Idle, grasp burst, low hold, release burst; drives phase inference.
SampledTrace power_trace() {
  SampledTrace tr;
  tr.kind = TraceKind::Power;
  const double dt = 1.0 / 100.0;
  for (int i = 0; i <= 1600; ++i) {
    const double t = i * dt;
    double p = 0.002;
    if (t >= 1.0 && t < 3.0) p = 1.3;
    else if (t >= 3.0 && t < 13.0) p = 0.15;
    else if (t >= 13.0 && t < 15.0) p = 0.95;
    tr.samples.push_back({t, p, 0});
  }
  return tr;
}

void BM_smooth(benchmark::State& state) {
  const SampledTrace tr = load_trace(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(smooth(tr, 0.05));
  }
}
BENCHMARK(BM_smooth)->Arg(1000)->Arg(5000);

void BM_integrate(benchmark::State& state) {
  const SampledTrace tr = power_trace();
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_power(tr, 1.0, 15.0));
  }
}
BENCHMARK(BM_integrate);

void BM_slip_onset(benchmark::State& state) {
  const SampledTrace tr = load_trace(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(detect_slip_onset(tr));
  }
}
BENCHMARK(BM_slip_onset)->Arg(1000)->Arg(5000);

void BM_segment_phases(benchmark::State& state) {
  const SampledTrace tr = power_trace();
  const std::vector<PhaseMark> none;
  for (auto _ : state) {
    benchmark::DoNotOptimize(segment_phases(tr, none));
  }
}
BENCHMARK(BM_segment_phases);

} // namespace
