#include "cegb/signal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cegb/error.hpp"
#include "cegb/stats.hpp"

namespace cegb {

namespace {

void require_monotonic(const SampledTrace& trace) {
  for (std::size_t i = 1; i < trace.samples.size(); ++i) {
    if (!(trace.samples[i].t_s > trace.samples[i - 1].t_s)) {
      raise(errc::non_monotonic_trace,
            "timestamps not strictly increasing near t=" +
                std::to_string(trace.samples[i].t_s));
    }
  }
}

std::vector<double> scalar_values(const SampledTrace& trace) {
  std::vector<double> v(trace.size());
  for (std::size_t i = 0; i < trace.size(); ++i) v[i] = trace.value_at(i);
  return v;
}

// Piecewise-linear value at time t; t must lie within the sampled span.
double value_at_time(const std::vector<double>& t, const std::vector<double>& v, double at) {
  auto it = std::upper_bound(t.begin(), t.end(), at);
  std::size_t idx = static_cast<std::size_t>(it - t.begin());
  if (idx == 0) return v.front();
  --idx;
  if (t[idx] == at || idx + 1 >= t.size()) return v[idx];
  const double frac = (at - t[idx]) / (t[idx + 1] - t[idx]);
  return v[idx] + frac * (v[idx + 1] - v[idx]);
}

} // namespace

SampledTrace smooth(const SampledTrace& trace, double window_s) {
  if (window_s < 0) throw std::invalid_argument("smooth: negative window");
  require_monotonic(trace);

  SampledTrace out;
  out.kind = trace.kind == TraceKind::VoltageCurrent ? TraceKind::Power : trace.kind;
  out.phase_marks = trace.phase_marks;
  out.samples.resize(trace.size());

  const std::vector<double> v = scalar_values(trace);
  const double half = window_s / 2.0;

  std::size_t left = 0;
  std::size_t right = 0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const double ti = trace.samples[i].t_s;
    while (left < i && trace.samples[left].t_s < ti - half) ++left;
    if (right < i + 1) right = i + 1;
    while (right < trace.size() && trace.samples[right].t_s <= ti + half) ++right;

    double sum = 0;
    for (std::size_t j = left; j < right; ++j) sum += v[j];
    out.samples[i].t_s = ti;
    out.samples[i].v0 = sum / static_cast<double>(right - left);
  }
  return out;
}

double integrate_power(const SampledTrace& trace, double t0_s, double t1_s) {
  if (trace.size() < 2) {
    raise(errc::trace_too_short, "integration needs at least 2 samples");
  }
  require_monotonic(trace);
  if (!(t0_s < t1_s)) {
    raise(errc::window_out_of_range, "integration window is empty or inverted");
  }
  if (t0_s < trace.t_front() || t1_s > trace.t_back()) {
    raise(errc::window_out_of_range,
          "window [" + std::to_string(t0_s) + ", " + std::to_string(t1_s) +
              "] outside the sampled span [" + std::to_string(trace.t_front()) + ", " +
              std::to_string(trace.t_back()) + "]");
  }

  std::vector<double> t(trace.size());
  for (std::size_t i = 0; i < trace.size(); ++i) t[i] = trace.samples[i].t_s;
  const std::vector<double> v = scalar_values(trace);

  double prev_t = t0_s;
  double prev_v = value_at_time(t, v, t0_s);
  double sum = 0;

  auto it = std::upper_bound(t.begin(), t.end(), t0_s);
  for (std::size_t j = static_cast<std::size_t>(it - t.begin()); j < t.size() && t[j] < t1_s;
       ++j) {
    sum += 0.5 * (prev_v + v[j]) * (t[j] - prev_t);
    prev_t = t[j];
    prev_v = v[j];
  }
  const double end_v = value_at_time(t, v, t1_s);
  sum += 0.5 * (prev_v + end_v) * (t1_s - prev_t);
  return sum;
}

SlipOnset detect_slip_onset(const SampledTrace& trace, const SlipDetectorConfig& cfg) {
  if (trace.empty()) raise(errc::trace_too_short, "slip detection on an empty trace");
  if (!(cfg.drop_fraction > 0 && cfg.drop_fraction < 1)) {
    throw std::invalid_argument("detect_slip_onset: drop_fraction outside (0, 1)");
  }

  const SampledTrace sm = smooth(trace, cfg.smoothing_window_s);
  const std::vector<double> y = scalar_values(sm);
  const std::size_t n = y.size();

  // The moving average smears a raw dip by up to one smoothing window, so
  // the persistence requirement is extended by it; see header.
  const double persist = cfg.sustain_window_s + cfg.smoothing_window_s;

  double run_max = y[0];
  std::size_t argmax = 0;
  for (std::size_t i = 1; i < n; ++i) {
    const double ti = sm.samples[i].t_s;
    if (run_max > 0 && y[i] <= (1.0 - cfg.drop_fraction) * run_max) {
      const double limit = (1.0 - cfg.drop_fraction) * run_max;
      const double t_end = ti + persist;
      bool sustained = sm.t_back() >= t_end;
      for (std::size_t j = i; j < n && sm.samples[j].t_s <= t_end; ++j) {
        if (y[j] > limit) {
          sustained = false;
          break;
        }
      }
      if (sustained) {
        return {ti, y[argmax], true};
      }
    } else if (y[i] > run_max) {
      run_max = y[i];
      argmax = i;
    }
  }

  // No sustained drop: the trial ended at the test-bench safety limit, so
  // the resistible force is the global maximum.
  return {sm.samples[argmax].t_s, run_max, false};
}

PeakPlateau peak_plateau(const SampledTrace& trace, double plateau_window_s,
                         double smoothing_window_s) {
  if (trace.empty()) raise(errc::trace_too_short, "peak_plateau on an empty trace");
  if (!(plateau_window_s > 0)) {
    throw std::invalid_argument("peak_plateau: plateau window must be positive");
  }
  if (trace.t_back() - trace.t_front() < plateau_window_s) {
    raise(errc::trace_too_short, "trace shorter than the plateau window");
  }

  const SampledTrace sm = smooth(trace, smoothing_window_s);
  const std::vector<double> y = scalar_values(sm);

  PeakPlateau out;
  out.peak = *std::max_element(y.begin(), y.end());

  const double cutoff = sm.t_back() - plateau_window_s;
  std::vector<double> tail;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (sm.samples[i].t_s >= cutoff) tail.push_back(y[i]);
  }
  out.plateau = quantile(tail, 0.5);
  return out;
}

namespace {

[[noreturn]] void inference_fail(const std::string& why) {
  raise(errc::phase_inference_failed, why);
}

} // namespace

std::vector<PhaseMark> segment_phases(const SampledTrace& trace,
                                      const std::vector<PhaseMark>& marks,
                                      double smoothing_window_s) {
  if (!marks.empty()) {
    for (std::size_t i = 0; i < marks.size(); ++i) {
      if (!(marks[i].t_start_s < marks[i].t_end_s)) {
        inference_fail("explicit phase mark with t_start >= t_end");
      }
      if (i > 0 && marks[i].t_start_s < marks[i - 1].t_end_s) {
        inference_fail("explicit phase marks overlap or are out of order");
      }
    }
    if (!trace.empty() &&
        (marks.front().t_start_s < trace.t_front() || marks.back().t_end_s > trace.t_back())) {
      inference_fail("explicit phase marks extend beyond the sampled span");
    }
    return marks;
  }

  if (trace.size() < 4) inference_fail("trace too short to infer phases");

  const SampledTrace sm = smooth(trace, smoothing_window_s);
  const std::vector<double> y = scalar_values(sm);
  const double t0 = sm.t_front();

  std::vector<double> head;
  for (std::size_t i = 0; i < y.size() && sm.samples[i].t_s <= t0 + 0.2; ++i) {
    head.push_back(y[i]);
  }
  if (head.empty()) inference_fail("no samples in the first 200 ms");

  const double baseline = quantile(head, 0.5);
  std::vector<double> dev(head.size());
  for (std::size_t i = 0; i < head.size(); ++i) dev[i] = std::abs(head[i] - baseline);
  const double mad = quantile(dev, 0.5);

  const double max_y = *std::max_element(y.begin(), y.end());
  double thresh = baseline + 3.0 * mad;
  if (mad == 0.0) thresh = baseline + 0.05 * (max_y - baseline);
  if (!(max_y > thresh)) inference_fail("no activity above the idle baseline");

  struct Region {
    std::size_t first, last;
  };
  std::vector<Region> regions;
  for (std::size_t i = 0; i < y.size();) {
    if (y[i] > thresh) {
      std::size_t j = i;
      while (j + 1 < y.size() && y[j + 1] > thresh) ++j;
      if (sm.samples[j].t_s - sm.samples[i].t_s >= smoothing_window_s) {
        regions.push_back({i, j});
      }
      i = j + 1;
    } else {
      ++i;
    }
  }
  if (regions.size() < 2) {
    inference_fail("fewer than two active regions above the idle baseline");
  }

  const Region& g = regions.front();
  const Region& r = regions.back();
  std::vector<PhaseMark> out;
  out.push_back({Phase::Grasp, sm.samples[g.first].t_s, sm.samples[g.last].t_s});
  out.push_back({Phase::Hold, sm.samples[g.last].t_s, sm.samples[r.first].t_s});
  out.push_back({Phase::Release, sm.samples[r.first].t_s, sm.samples[r.last].t_s});
  return out;
}

} // namespace cegb
