#pragma once

/// Data model for gripper benchmark sessions: manifests, test artifacts,
/// grasp attempts, transfer cycles and sampled sensor traces. Everything is
/// stored in SI units (seconds, newtons, joules, watts, volts, amperes);
/// artifact geometry uses millimetres and mass uses grams, as logged.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cegb/version.hpp"

namespace cegb {

enum class ArtifactShape { Cylinder, Box, Sphere };

// Gripper finger compliance classes: rigid, one semi-compliant phalanx,
// two semi-compliant phalanges, fully compliant.
enum class Compliance { Rigid, SemiOne, SemiTwo, Full };

enum class GripType { Wrap, Pinch };

enum class IdealShape { Cylinder, Box, Sphere };

const char* to_code(ArtifactShape s) noexcept;
const char* to_code(Compliance c) noexcept;
const char* to_code(GripType g) noexcept;
const char* to_code(IdealShape s) noexcept;

ArtifactShape artifact_shape_from_code(std::string_view code);
Compliance compliance_from_code(std::string_view code);
GripType grip_type_from_code(std::string_view code);
IdealShape ideal_shape_from_code(std::string_view code);

// Intent parameters declared by the gripper vendor/operator: preferred
// compliance, grip type, ideal object shape and gripping range.
struct GripperProfile {
  Compliance compliance = Compliance::Rigid;
  GripType grip_type = GripType::Pinch;
  IdealShape ideal_shape = IdealShape::Cylinder;
  double range_min_mm = 0;
  double range_max_mm = 0;

  // Compact profile code, e.g. "2S-P-B".
  std::string code() const;

  bool operator==(const GripperProfile&) const = default;
};

struct ArtifactSpec {
  std::string id;
  ArtifactShape shape = ArtifactShape::Cylinder;
  double dimension_mm = 0; // characteristic dimension (diameter / edge)
  double mass_g = 0;
  std::optional<std::string> coating;
  std::optional<double> finger_length_m; // lever arm used by the hold-quality ratio

  bool operator==(const ArtifactSpec&) const = default;
};

enum class Outcome { Success, Failure };

// Timestamps are session-relative seconds. Only the grasp command is
// mandatory; the rest may be missing when a lab logs pass/fail only.
struct AttemptEvents {
  double t_grasp_cmd_s = 0;
  std::optional<double> t_lift_5cm_s;
  std::optional<double> hold_duration_s;
  bool slip_during_hold = false;
  std::optional<double> t_release_done_s;

  bool operator==(const AttemptEvents&) const = default;
};

struct GraspAttempt {
  std::string object_id;
  int pose_index = 1;   // 1-based
  int attempt_index = 1; // 1-based within (object, pose)
  AttemptEvents events;
  std::optional<Outcome> outcome_override;

  bool operator==(const GraspAttempt&) const = default;
};

struct ParticipantGroup {
  enum class Kind { Bachelor, Master, UntrainedColleague, Experienced, Other };

  Kind kind = Kind::Other;
  std::string label; // canonical token for known kinds, verbatim otherwise

  static ParticipantGroup from_label(std::string_view label);

  bool operator==(const ParticipantGroup&) const = default;
  bool operator<(const ParticipantGroup& rhs) const { return label < rhs.label; }
};

// One attach-transfer-detach cycle performed by a participant. A cycle is
// successful when no fault of any kind occurred.
struct TransferCycle {
  std::string participant_id;
  ParticipantGroup group;
  double duration_s = 0;
  bool fault_mechanical = false; // misalignment
  bool fault_electrical = false; // connector issue
  bool fault_software = false;   // communication issue

  bool success() const { return !fault_mechanical && !fault_electrical && !fault_software; }

  bool operator==(const TransferCycle&) const = default;
};

enum class TraceKind { Force, Tangential, Pull, Power, VoltageCurrent };

enum class Phase { Approach, Grasp, Hold, Release };

const char* to_code(TraceKind k) noexcept;
const char* to_code(Phase p) noexcept;
Phase phase_from_code(std::string_view code);

struct PhaseMark {
  Phase phase = Phase::Grasp;
  double t_start_s = 0;
  double t_end_s = 0;

  bool operator==(const PhaseMark&) const = default;
};

struct TraceSample {
  double t_s = 0;
  double v0 = 0; // force [N], power [W] or voltage [V], per TraceKind
  double v1 = 0; // current [A] for VoltageCurrent, unused otherwise

  bool operator==(const TraceSample&) const = default;
};

// Uniformly or non-uniformly sampled sensor log. Timestamps must be
// strictly increasing; validate_session flags offenders.
struct SampledTrace {
  TraceKind kind = TraceKind::Force;
  std::vector<TraceSample> samples;
  std::vector<PhaseMark> phase_marks; // from the optional sidecar; may be empty

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
  double t_front() const { return samples.front().t_s; }
  double t_back() const { return samples.back().t_s; }

  // Scalar channel value: instantaneous power U*I for VoltageCurrent traces,
  // the logged value otherwise.
  double value_at(std::size_t i) const {
    const TraceSample& s = samples[i];
    return kind == TraceKind::VoltageCurrent ? s.v0 * s.v1 : s.v0;
  }

  bool operator==(const SampledTrace&) const = default;
};

// Which metric family consumes a trace.
enum class TraceRole { Free, Strength, Slip, Energy, Pull };

const char* to_code(TraceRole r) noexcept;
TraceRole trace_role_from_code(std::string_view code);

// Manifest entry tying a trace file to its place in the trial plan.
struct TraceBinding {
  std::string trace_id;
  std::string file; // bundle-relative path, e.g. "traces/slip_c50_t1.csv"
  TraceRole role = TraceRole::Free;
  std::optional<std::string> artifact_id;
  std::optional<int> trial;  // 1-based trial number within (role, artifact)
  std::optional<int> finger; // 1-based finger index for strength traces
  std::optional<double> object_mass_g;      // grasped object, energy trials
  std::optional<double> applied_torque_nm;  // slip trials, hold-quality input

  bool operator==(const TraceBinding&) const = default;
};

// Stopwatch pair for one grasp-cycle trial (no trace file involved).
struct CycleTrial {
  std::string artifact_id;
  double t_start_s = 0;
  double t_stop_s = 0;

  bool operator==(const CycleTrial&) const = default;
};

struct Manifest {
  std::string schema_version{kSchemaVersion};
  std::string gripper_name;
  std::string platform_name;
  std::optional<GripperProfile> gripper_profile;
  std::optional<std::string> operator_notes;
  std::vector<TraceBinding> trace_index;
  std::vector<CycleTrial> cycle_trials;
  std::optional<double> hold_nominal_s; // prescribed hold interval, default 10 s

  bool operator==(const Manifest&) const = default;
};

struct Session {
  Manifest manifest;
  std::vector<GraspAttempt> attempts;
  std::vector<TransferCycle> transfer_cycles;
  std::map<std::string, SampledTrace> traces;    // keyed by trace id
  std::map<std::string, ArtifactSpec> artifacts; // keyed by artifact id

  bool operator==(const Session&) const = default;
};

// One broken invariant, named after the offending record.
struct Violation {
  std::string record;    // e.g. "attempt o3/2/1", "trace slip_c50_t1"
  std::string invariant; // human-readable description

  bool operator==(const Violation&) const = default;
};

// Structural validation. Returns an empty list iff the session satisfies
// every model invariant (monotone traces, unique attempt keys, ordered
// events, resolvable references, sane manifest fields). Pure; idempotent.
std::vector<Violation> validate_session(const Session& session);

} // namespace cegb
