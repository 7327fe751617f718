#pragma once

/// Synthetic session generators with known ground truth. Every generator is
/// bit-deterministic under a fixed seed and emits bundles through the normal
/// write path, so oracle tests exercise the full ingest chain. Bundles carry
/// a ground_truth.json sidecar recording the constructed targets.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cegb/model.hpp"

namespace cegb {

struct GroundTruth {
  std::uint64_t seed = 0;

  struct Ycb {
    int successes = 0;
    int trials = 0;
    double micro = 0;
    double macro = 0;

    bool operator==(const Ycb&) const = default;
  };
  std::optional<Ycb> ycb;

  // One target value per artifact dimension, sorted by dimension.
  struct DimValue {
    double dimension_mm = 0;
    double value = 0;

    bool operator==(const DimValue&) const = default;
  };
  std::vector<DimValue> cycle_time_s;       // median cycle time
  std::vector<DimValue> strength_plateau_n; // total plateau normal force
  std::vector<DimValue> slip_force_n;       // tangential force at slip onset
  std::vector<DimValue> ideal_payload_n;    // peak resistible pull force

  struct Energy {
    double e_grasp_j = 0;
    double e_hold_j = 0;
    double e_release_j = 0;
    double e_cycle_j = 0;
    double p_hold_w = 0;
    double mass_g = 0;

    bool operator==(const Energy&) const = default;
  };
  std::optional<Energy> energy;

  std::optional<double> transfer_success_rate;
  struct TransferGroup {
    std::string group;
    double mean_s = 0; // mean over fault-free cycles
    int cycles = 0;

    bool operator==(const TransferGroup&) const = default;
  };
  std::vector<TransferGroup> transfer_groups; // sorted by group label

  std::optional<std::string> profile_code;

  bool operator==(const GroundTruth&) const = default;
};

struct SynthBundle {
  Session session;
  GroundTruth truth;
};

// Pick-and-place attempts with Bernoulli outcomes. p_table maps object id
// to one success probability per pose; every pose gets `attempts` repeats.
// Event timestamps are drawn consistent with the generated outcome, and the
// ground truth records the exact realized counts.
struct YcbGenConfig {
  std::map<std::string, std::vector<double>> p_table;
  int attempts = 5;
  std::uint64_t seed = 42;
};
SynthBundle gen_ycb(const YcbGenConfig& cfg);

// Piecewise-constant power profile over grasp/hold/release phases with
// optional zero-mean Gaussian noise. Phase boundaries carry a two-sample
// 1 microsecond transition so trapezoid integration over a phase window
// recovers power x duration essentially exactly. Ground-truth energies are
// the analytic products.
struct EnergyGenConfig {
  int trials = 1;
  double p_grasp_w = 1.295;
  double p_hold_w = 0.15;
  double p_release_w = 0.955;
  double grasp_s = 2.0;
  double hold_s = 10.0;
  double release_s = 2.0;
  double rate_hz = 100.0;
  double noise_sd_w = 0.0;
  double idle_prefix_s = 0.0;  // zero-power lead-in, for phase inference
  double mass_g = 600.0;
  bool with_marks = true;          // write phase sidecars
  bool as_voltage_current = false; // emit u_V,i_A at a fixed 24 V bus
  std::uint64_t seed = 42;
};
SynthBundle gen_energy(const EnergyGenConfig& cfg);

// Tangential-load ramp to f_true, a short plateau, then a sustained drop to
// post_drop_level x f_true (a level >= 0.999 keeps the force up, modelling
// a safety-limit stop). dispersion_n spreads trials symmetrically around
// f_true so the per-dimension median stays on target. Ground truth F_slip
// is f_true.
struct SlipGenConfig {
  int trials = 1;
  double f_true_n = 6.28;
  double ramp_rate_n_per_s = 4.0;
  double post_drop_level = 0.3;
  double noise_sd_n = 0.0;
  double rate_hz = 500.0;
  double dimension_mm = 32.0;
  double dispersion_n = 0.0;
  bool transient_dip = false; // 60 ms mid-plateau dip that must not trigger
  std::uint64_t seed = 42;
};
SynthBundle gen_slip(const SlipGenConfig& cfg);

// Transfer cycles with truncated-normal durations (resampled until
// positive) and Bernoulli faults. Ground truth records the realized
// fault-free mean per group and the realized success rate.
struct TransferGenConfig {
  struct Group {
    std::string label;
    double mean_s = 15.0;
    double sd_s = 0.0;
    int cycles = 10;
  };
  std::vector<Group> groups;
  double fault_rate = 0.0;
  std::uint64_t seed = 42;
};
SynthBundle gen_transfer(const TransferGenConfig& cfg);

// One randomized zero-noise bundle covering every metric family, with all
// targets drawn from the seed. Dispersion uses symmetric paired offsets, so
// medians and means recover the recorded targets up to rounding.
SynthBundle gen_mixed(std::uint64_t seed);

// The fixed benchmark campaign used as the golden fixture: two cycle-time
// artifacts, two strength artifacts, four slip artifacts, three pull
// artifacts, ten energy trials and four participant groups, all built with
// deterministic symmetric dispersion around fixed reference values.
SynthBundle gen_replica(std::uint64_t seed = 42);

// write_session plus the ground_truth.json sidecar.
void write_bundle(const SynthBundle& bundle, const std::filesystem::path& dir);

void write_ground_truth(const GroundTruth& truth, const std::filesystem::path& file);
GroundTruth load_ground_truth(const std::filesystem::path& file);

} // namespace cegb
