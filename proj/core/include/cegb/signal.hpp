#pragma once

/// Trace processing: centered moving-average smoothing, trapezoidal power
/// integration with linear edge interpolation, slip-onset detection,
/// peak/plateau extraction and grasp-phase segmentation.

#include <vector>

#include "cegb/model.hpp"

namespace cegb {

struct SlipDetectorConfig {
  double drop_fraction = 0.20;     // relative drop that counts as slipping
  double sustain_window_s = 0.100; // how long the drop must persist
  double smoothing_window_s = 0.050;

  bool operator==(const SlipDetectorConfig&) const = default;
};

struct SlipOnset {
  double t_slip_s = 0;
  double force_n = 0;         // peak of the smoothed trace up to the onset
  bool sustained_drop = false; // false: no drop found (safety-limit stop)
};

struct PeakPlateau {
  double peak = 0;
  double plateau = 0;
};

// Centered moving average over a time window (seconds). Windows are
// truncated at the trace ends; a window smaller than the local sample
// spacing leaves the trace unchanged. VoltageCurrent traces are smoothed
// on instantaneous power U*I and come back as Power traces. Timestamps and
// phase marks are preserved.
SampledTrace smooth(const SampledTrace& trace, double window_s);

// Energy in joules over [t0, t1] by the trapezoid rule. Window edges that
// fall between samples use linearly interpolated values, which makes the
// integral exactly additive over adjacent windows. The window must lie
// within the sampled span. VoltageCurrent traces integrate U*I.
double integrate_power(const SampledTrace& trace, double t0_s, double t1_s);

// Peak force before the first sustained drop of the smoothed trace.
// A drop begins when the smoothed value falls to (1 - drop_fraction) times
// the running maximum; it counts as sustained when it persists for
// sustain_window_s + smoothing_window_s (the smoothing margin keeps raw
// transients shorter than sustain_window_s from ever triggering).
// With no sustained drop the global maximum is returned and
// sustained_drop is false, which is the safety-limit-stop reading.
SlipOnset detect_slip_onset(const SampledTrace& trace, const SlipDetectorConfig& cfg = {});

// Peak = max of the smoothed trace; plateau = median over the final
// plateau_window_s. peak >= plateau always holds.
PeakPlateau peak_plateau(const SampledTrace& trace, double plateau_window_s = 0.5,
                         double smoothing_window_s = 0.05);

// Phase segmentation. Non-empty marks are validated (ordered,
// non-overlapping, inside the sampled span) and passed through unchanged;
// explicit marks always win over inference. With no marks, phases are
// inferred from smoothed power: threshold = median of the first 200 ms
// + 3 * MAD, first above-threshold region = Grasp, last = Release, the
// stretch between them = Hold. Inference needs an idle prefix and at least
// two active regions, otherwise PhaseInferenceFailed is raised.
std::vector<PhaseMark> segment_phases(const SampledTrace& trace,
                                      const std::vector<PhaseMark>& marks,
                                      double smoothing_window_s = 0.05);

} // namespace cegb
