#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "cegb/error.hpp"
#include "cegb/signal.hpp"

using namespace cegb;

namespace {

SampledTrace make_trace(TraceKind kind, double rate_hz, double duration_s,
                        double (*f)(double)) {
  SampledTrace tr;
  tr.kind = kind;
  const int n = static_cast<int>(duration_s * rate_hz);
  for (int i = 0; i <= n; ++i) {
    const double t = i / rate_hz;
    tr.samples.push_back({t, f(t), 0.0});
  }
  return tr;
}

SampledTrace constant_trace(double value, double rate_hz, double duration_s) {
  SampledTrace tr;
  tr.kind = TraceKind::Power;
  const int n = static_cast<int>(duration_s * rate_hz);
  for (int i = 0; i <= n; ++i) tr.samples.push_back({i / rate_hz, value, 0.0});
  return tr;
}

// Ramp to level over ramp_s, plateau, optional dip, optional sustained drop.
SampledTrace slip_shape(double level, bool with_dip, bool with_drop) {
  SampledTrace tr;
  tr.kind = TraceKind::Tangential;
  const double rate = 500;
  const double ramp_end = 1.5, dip_start = 1.8, dip_end = 1.86, drop_start = 2.4, end = 3.2;
  for (int i = 0;; ++i) {
    const double t = i / rate;
    if (t > end) break;
    double v;
    if (t < ramp_end) {
      v = level * t / ramp_end;
    } else if (with_dip && t >= dip_start && t < dip_end) {
      v = 0.7 * level;
    } else if (with_drop && t >= drop_start) {
      v = 0.25 * level;
    } else {
      v = level;
    }
    tr.samples.push_back({t, v, 0.0});
  }
  return tr;
}

} // namespace

TEST_SUITE("signal") {

TEST_CASE("smoothing a constant trace is the identity") {
  const SampledTrace tr = constant_trace(2.5, 100, 1.0);
  const SampledTrace sm = smooth(tr, 0.05);
  REQUIRE(sm.size() == tr.size());
  for (std::size_t i = 0; i < tr.size(); ++i) {
    CHECK(sm.samples[i].t_s == tr.samples[i].t_s);
    CHECK(sm.samples[i].v0 == doctest::Approx(2.5).epsilon(1e-15));
  }
}

TEST_CASE("a window below the sample spacing leaves values untouched") {
  SampledTrace tr;
  tr.kind = TraceKind::Power;
  tr.samples = {{0, 1, 0}, {1, 5, 0}, {2, 2, 0}};
  const SampledTrace sm = smooth(tr, 0.5);
  CHECK(sm.samples[0].v0 == 1);
  CHECK(sm.samples[1].v0 == 5);
  CHECK(sm.samples[2].v0 == 2);
}

TEST_CASE("centered window averages and truncates at the ends") {
  SampledTrace tr;
  tr.kind = TraceKind::Power;
  tr.samples = {{0, 0, 0}, {1, 3, 0}, {2, 0, 0}};
  const SampledTrace sm = smooth(tr, 2.0);
  CHECK(sm.samples[0].v0 == doctest::Approx(1.5)); // [0,1] in window
  CHECK(sm.samples[1].v0 == doctest::Approx(1.0)); // all three
  CHECK(sm.samples[2].v0 == doctest::Approx(1.5));
}

TEST_CASE("voltage-current traces smooth on instantaneous power") {
  SampledTrace tr;
  tr.kind = TraceKind::VoltageCurrent;
  tr.samples = {{0, 24, 0.5}, {0.01, 24, 0.5}, {0.02, 24, 0.5}};
  const SampledTrace sm = smooth(tr, 0.02);
  CHECK(sm.kind == TraceKind::Power);
  for (const TraceSample& s : sm.samples) CHECK(s.v0 == doctest::Approx(12.0).epsilon(1e-15));
}

TEST_CASE("phase marks survive smoothing") {
  SampledTrace tr = constant_trace(1.0, 100, 1.0);
  tr.phase_marks = {{Phase::Grasp, 0.0, 0.5}, {Phase::Hold, 0.5, 1.0}};
  CHECK(smooth(tr, 0.05).phase_marks == tr.phase_marks);
}

TEST_CASE("integration of constant power is exact") {
  const SampledTrace tr = constant_trace(2.0, 100, 10.0);
  CHECK(integrate_power(tr, 0.0, 10.0) == doctest::Approx(20.0).epsilon(1e-14));
  CHECK(integrate_power(tr, 1.0, 3.0) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("sine-squared fixture integrates to one half") {
  const SampledTrace tr = make_trace(TraceKind::Power, 100, 1.0, [](double t) {
    const double s = std::sin(2 * std::numbers::pi * t);
    return s * s;
  });
  CHECK(integrate_power(tr, 0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("integration windows are additive at arbitrary split points") {
  const SampledTrace tr = make_trace(TraceKind::Power, 100, 1.0, [](double t) {
    const double s = std::sin(2 * std::numbers::pi * t);
    return s * s;
  });
  const double whole = integrate_power(tr, 0.0, 1.0);
  for (double split : {0.25, 0.3703, 0.5, 0.777}) {
    const double parts = integrate_power(tr, 0.0, split) + integrate_power(tr, split, 1.0);
    CHECK(std::fabs(whole - parts) <= 1e-9 * std::fabs(whole));
  }
}

TEST_CASE("window edges between samples interpolate linearly") {
  // f(t) = t is integrated exactly by the trapezoid rule, edges included.
  const SampledTrace tr = make_trace(TraceKind::Power, 1, 4.0, [](double t) { return t; });
  CHECK(integrate_power(tr, 0.5, 1.5) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(integrate_power(tr, 0.25, 3.75) == doctest::Approx(7.0).epsilon(1e-14));
}

TEST_CASE("integration rejects degenerate inputs") {
  SampledTrace tiny;
  tiny.kind = TraceKind::Power;
  tiny.samples = {{0, 1, 0}};
  CHECK_THROWS_AS(integrate_power(tiny, 0, 1), Error);

  const SampledTrace tr = constant_trace(1.0, 100, 1.0);
  CHECK_THROWS_AS(integrate_power(tr, 0.5, 0.5), Error);
  CHECK_THROWS_AS(integrate_power(tr, 0.8, 0.2), Error);
  CHECK_THROWS_AS(integrate_power(tr, 0.5, 1.5), Error);
  CHECK_THROWS_AS(integrate_power(tr, -0.5, 0.5), Error);
}

TEST_CASE("slip onset reports the pre-drop peak") {
  const SampledTrace tr = slip_shape(6.0, false, true);
  const SlipOnset onset = detect_slip_onset(tr, {});
  CHECK(onset.sustained_drop);
  CHECK(onset.force_n == doctest::Approx(6.0).epsilon(1e-6));
  CHECK(onset.t_slip_s > 2.3);
  CHECK(onset.t_slip_s < 2.6);
}

TEST_CASE("transient dips shorter than the sustain window do not trigger") {
  const SampledTrace tr = slip_shape(6.0, true, false);
  const SlipOnset onset = detect_slip_onset(tr, {});
  CHECK_FALSE(onset.sustained_drop);
  CHECK(onset.force_n == doctest::Approx(6.0).epsilon(1e-6));
}

TEST_CASE("a dip before the real drop is ignored") {
  const SampledTrace tr = slip_shape(6.0, true, true);
  const SlipOnset onset = detect_slip_onset(tr, {});
  CHECK(onset.sustained_drop);
  CHECK(onset.force_n == doctest::Approx(6.0).epsilon(1e-6));
  CHECK(onset.t_slip_s > 2.3);
}

TEST_CASE("a monotone rising pull ends at the safety limit") {
  const SampledTrace tr =
      make_trace(TraceKind::Pull, 500, 2.0, [](double t) { return 4.0 * t; });
  const SlipOnset onset = detect_slip_onset(tr, {});
  CHECK_FALSE(onset.sustained_drop);
  // The centered window truncates at the trace end, so the smoothed peak
  // sits half a window before the raw one.
  CHECK(onset.force_n == doctest::Approx(8.0).epsilon(0.01));
}

TEST_CASE("peak and plateau of an overshooting strength trace") {
  SampledTrace tr;
  tr.kind = TraceKind::Force;
  const double rate = 500;
  for (int i = 0;; ++i) {
    const double t = i / rate;
    if (t > 3.0) break;
    double v;
    if (t < 1.0) v = 12.0 * t;          // ramp to overshoot
    else if (t < 1.2) v = 12.0;          // overshoot
    else if (t < 1.3) v = 12.0 - 20.0 * (t - 1.2); // ease down
    else v = 10.0;                        // plateau
    tr.samples.push_back({t, v, 0.0});
  }
  const PeakPlateau pp = peak_plateau(tr, 0.5, 0.05);
  CHECK(pp.peak == doctest::Approx(12.0).epsilon(1e-2));
  CHECK(pp.plateau == doctest::Approx(10.0).epsilon(1e-9));
}

TEST_CASE("explicit phase marks pass through segmentation") {
  SampledTrace tr = constant_trace(1.0, 100, 14.0);
  const std::vector<PhaseMark> marks = {
      {Phase::Grasp, 0.0, 2.0}, {Phase::Hold, 2.0, 12.0}, {Phase::Release, 12.0, 14.0}};
  CHECK(segment_phases(tr, marks, 0.05) == marks);
}

TEST_CASE("burst-idle-burst power profiles are segmented") {
  SampledTrace tr;
  tr.kind = TraceKind::Power;
  const double rate = 100;
  for (int i = 0;; ++i) {
    const double t = i / rate;
    if (t > 6.0) break;
    double v = 0.001; // idle floor
    if (t >= 0.5 && t < 2.0) v = 1.2;   // grasp burst
    if (t >= 4.5 && t < 5.5) v = 0.9;   // release burst
    tr.samples.push_back({t, v, 0.0});
  }
  const std::vector<PhaseMark> marks = segment_phases(tr, {}, 0.05);
  REQUIRE(marks.size() == 3);
  CHECK(marks[0].phase == Phase::Grasp);
  CHECK(marks[1].phase == Phase::Hold);
  CHECK(marks[2].phase == Phase::Release);
  CHECK(marks[0].t_start_s == doctest::Approx(0.5).epsilon(0.2));
  CHECK(marks[0].t_end_s == doctest::Approx(2.0).epsilon(0.2));
  CHECK(marks[1].t_end_s == doctest::Approx(4.5).epsilon(0.2));
  CHECK(marks[2].t_end_s == doctest::Approx(5.5).epsilon(0.2));
}

TEST_CASE("segmentation fails loudly on a featureless trace") {
  const SampledTrace tr = constant_trace(0.15, 100, 5.0);
  CHECK_THROWS_AS(segment_phases(tr, {}, 0.05), Error);
  try {
    segment_phases(tr, {}, 0.05);
  } catch (const Error& e) {
    CHECK(e.code() == errc::phase_inference_failed);
  }
}

} // TEST_SUITE
