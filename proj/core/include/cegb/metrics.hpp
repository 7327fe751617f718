#pragma once

/// Metric families: pick-and-place success aggregation (YCB protocol),
/// grasp cycle time / strength / slip resistance (NIST protocol), gripper
/// transfer time, phase-wise energy and the intent-specific ideal payload.
/// Every summary follows the convention in stats.hpp.

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cegb/model.hpp"
#include "cegb/signal.hpp"
#include "cegb/stats.hpp"

namespace cegb {

// Pass/fail rules for one grasp attempt, session-wide.
struct ClassifyRules {
  double lift_within_s = 3.0;    // object must be 5 cm up within this long
  double hold_min_s = 3.0;       // minimum hold duration
  double event_deadline_s = 10.0; // all event timestamps within this of the command

  bool operator==(const ClassifyRules&) const = default;
};

enum class FailReason {
  None,
  NoLift,         // lift event missing
  LiftTooSlow,    // lifted, but not within the limit
  HoldTooShort,   // hold missing or shorter than the minimum
  SlipDuringHold,
  Timeout,        // an event fell outside the attempt deadline
  OverrideFailure // operator-supplied failure, no event data
};

const char* to_code(FailReason r) noexcept;

struct Classification {
  Outcome outcome = Outcome::Failure;
  FailReason reason = FailReason::NoLift;

  bool operator==(const Classification&) const = default;
};

// Success iff lifted within the limit AND held long enough AND no slip AND
// every logged event timestamp within the deadline; reason names the first
// failed clause in that order. The outcome override is consulted only when
// the attempt carries no event evidence (no lift/hold/release, slip clear);
// an override contradicting present events raises InconsistentOverride.
Classification classify_attempt(const GraspAttempt& attempt, const ClassifyRules& rules = {});

struct PoseStat {
  std::string object_id;
  int pose_index = 1;
  Proportion success;

  bool operator==(const PoseStat&) const = default;
};

struct ObjectStat {
  std::string object_id;
  std::size_t poses = 0;
  double success_rate = 0; // mean of per-pose rates

  bool operator==(const ObjectStat&) const = default;
};

struct YcbResult {
  std::vector<PoseStat> per_pose;     // sorted by (object, pose)
  std::vector<ObjectStat> per_object; // sorted by object
  Proportion micro;                   // pooled successes / pooled attempts
  double macro = 0;                   // mean of per-object rates
  Interval macro_ci;                  // bootstrap over objects
  std::optional<SummaryStat> time_to_lift_s;
  std::optional<SummaryStat> time_to_release_s;

  bool operator==(const YcbResult&) const = default;
};

// Aggregates attempt outcomes per pose, object and session. Requires every
// pose group of an object to hold the same attempt count with contiguous
// pose and attempt indices; anything else raises UnbalancedAttempts.
YcbResult ycb_aggregate(std::span<const GraspAttempt> attempts, const BootstrapConfig& cfg,
                        const ClassifyRules& rules = {});

// Cycle time per trial is t_stop - t_start; t_stop <= t_start raises
// NegativeDuration.
SummaryStat cycle_time(std::span<const std::pair<double, double>> start_stop,
                       const BootstrapConfig& cfg);

// Per-trial grasp strength: finger traces summed pointwise (identical
// timestamp grids required, else TraceSpanMismatch), then peak/plateau of
// the summed trace. The plateau is the reported total normal force.
PeakPlateau grasp_strength_trial(std::span<const SampledTrace> finger_traces,
                                 double plateau_window_s = 0.5,
                                 double smoothing_window_s = 0.05);

struct SlipTrial {
  double f_slip_n = 0;
  double t_slip_s = 0;
  bool sustained_drop = false;
  std::optional<double> mu_eff; // F_slip / sum of grasp normal forces
  std::optional<double> q_hold; // F_slip * L / T_a, only with torque + length
};

// Slip family numbers for one tangential-force trial. normals_sum_n is the
// total normal force from the artifact's strength trials; zero or negative
// raises ZeroNormalForce, absent leaves mu_eff unset. A present applied
// torque without a finger length raises MissingFingerLength.
SlipTrial slip_metrics(const SampledTrace& tangential, std::optional<double> normals_sum_n,
                       std::optional<double> applied_torque_nm,
                       std::optional<double> finger_length_m,
                       const SlipDetectorConfig& cfg = {});

struct TransferStats {
  std::size_t cycles = 0;
  Proportion robustness; // fault-free cycles / all cycles
  // Duration statistics cover fault-free cycles only; absent when none.
  std::optional<double> mean_s;
  std::optional<SummaryStat> duration_s;

  bool operator==(const TransferStats&) const = default;
};

struct TransferResult {
  TransferStats overall;
  std::vector<std::pair<ParticipantGroup, TransferStats>> per_group; // sorted by label

  bool operator==(const TransferResult&) const = default;
};

TransferResult transfer_summary(std::span<const TransferCycle> cycles,
                                const BootstrapConfig& cfg);

struct EnergyTrial {
  SampledTrace trace;           // Power or VoltageCurrent
  std::vector<PhaseMark> marks; // empty: infer via segment_phases
  std::optional<double> object_mass_g;
};

struct EnergyResult {
  SummaryStat e_grasp_j;
  SummaryStat e_hold_j;
  SummaryStat e_release_j;
  SummaryStat e_cycle_j; // per trial: grasp + hold + release
  double p_hold_mean_w = 0; // median of per-trial mean hold power
  double e_hold10_j = 0;    // 10 s x p_hold_mean_w
  std::optional<double> energy_to_weight_grasp_j_per_g;
  std::optional<double> energy_to_weight_cycle_j_per_g;
  double t_hold_nominal_s = 10.0;

  bool operator==(const EnergyResult&) const = default;
};

// Integrates each trial's power trace over its grasp/hold/release phases.
// Trials with a mass contribute median energy-to-weight ratios; a mass of
// exactly zero raises ZeroMass.
EnergyResult energy_metrics(std::span<const EnergyTrial> trials, double t_hold_nominal_s,
                            const BootstrapConfig& cfg, double smoothing_window_s = 0.05);

struct PullTrials {
  double dimension_mm = 0;
  std::vector<SampledTrace> traces;
};

struct IipbArtifact {
  double dimension_mm = 0;
  SummaryStat f_ideal_n; // peak resistible pull force per trial

  bool operator==(const IipbArtifact&) const = default;
};

struct IipbResult {
  std::string profile_code; // e.g. "2S-P-B"
  std::vector<IipbArtifact> per_artifact; // sorted by dimension

  bool operator==(const IipbResult&) const = default;
};

// Ideal-payload family: per-trial ideal force from the slip detector (a
// safety-limit stop yields the global maximum). The gripper profile is
// mandatory; its absence raises MissingProfile.
IipbResult iipb_metrics(std::span<const PullTrials> artifacts,
                        const std::optional<GripperProfile>& profile,
                        const BootstrapConfig& cfg, const SlipDetectorConfig& slip_cfg = {});

} // namespace cegb
