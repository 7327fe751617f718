#include "cegb/model.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "cegb/error.hpp"

namespace cegb {

const char* to_code(ArtifactShape s) noexcept {
  switch (s) {
    case ArtifactShape::Cylinder: return "cylinder";
    case ArtifactShape::Box: return "box";
    case ArtifactShape::Sphere: return "sphere";
  }
  return "?";
}

const char* to_code(Compliance c) noexcept {
  switch (c) {
    case Compliance::Rigid: return "R";
    case Compliance::SemiOne: return "1S";
    case Compliance::SemiTwo: return "2S";
    case Compliance::Full: return "F";
  }
  return "?";
}

const char* to_code(GripType g) noexcept {
  switch (g) {
    case GripType::Wrap: return "W";
    case GripType::Pinch: return "P";
  }
  return "?";
}

const char* to_code(IdealShape s) noexcept {
  switch (s) {
    case IdealShape::Cylinder: return "C";
    case IdealShape::Box: return "B";
    case IdealShape::Sphere: return "S";
  }
  return "?";
}

const char* to_code(TraceKind k) noexcept {
  switch (k) {
    case TraceKind::Force: return "force";
    case TraceKind::Tangential: return "tangential";
    case TraceKind::Pull: return "pull";
    case TraceKind::Power: return "power";
    case TraceKind::VoltageCurrent: return "voltage_current";
  }
  return "?";
}

const char* to_code(Phase p) noexcept {
  switch (p) {
    case Phase::Approach: return "approach";
    case Phase::Grasp: return "grasp";
    case Phase::Hold: return "hold";
    case Phase::Release: return "release";
  }
  return "?";
}

const char* to_code(TraceRole r) noexcept {
  switch (r) {
    case TraceRole::Free: return "free";
    case TraceRole::Strength: return "strength";
    case TraceRole::Slip: return "slip";
    case TraceRole::Energy: return "energy";
    case TraceRole::Pull: return "pull";
  }
  return "?";
}

ArtifactShape artifact_shape_from_code(std::string_view code) {
  if (code == "cylinder") return ArtifactShape::Cylinder;
  if (code == "box") return ArtifactShape::Box;
  if (code == "sphere") return ArtifactShape::Sphere;
  raise(errc::parse_error, "unknown artifact shape '" + std::string(code) + "'");
}

Compliance compliance_from_code(std::string_view code) {
  if (code == "R") return Compliance::Rigid;
  if (code == "1S") return Compliance::SemiOne;
  if (code == "2S") return Compliance::SemiTwo;
  if (code == "F") return Compliance::Full;
  raise(errc::parse_error, "unknown compliance code '" + std::string(code) + "'");
}

GripType grip_type_from_code(std::string_view code) {
  if (code == "W") return GripType::Wrap;
  if (code == "P") return GripType::Pinch;
  raise(errc::parse_error, "unknown grip type code '" + std::string(code) + "'");
}

IdealShape ideal_shape_from_code(std::string_view code) {
  if (code == "C") return IdealShape::Cylinder;
  if (code == "B") return IdealShape::Box;
  if (code == "S") return IdealShape::Sphere;
  raise(errc::parse_error, "unknown ideal shape code '" + std::string(code) + "'");
}

Phase phase_from_code(std::string_view code) {
  if (code == "approach") return Phase::Approach;
  if (code == "grasp") return Phase::Grasp;
  if (code == "hold") return Phase::Hold;
  if (code == "release") return Phase::Release;
  raise(errc::parse_error, "unknown phase '" + std::string(code) + "'");
}

TraceRole trace_role_from_code(std::string_view code) {
  if (code == "free") return TraceRole::Free;
  if (code == "strength") return TraceRole::Strength;
  if (code == "slip") return TraceRole::Slip;
  if (code == "energy") return TraceRole::Energy;
  if (code == "pull") return TraceRole::Pull;
  raise(errc::parse_error, "unknown trace role '" + std::string(code) + "'");
}

std::string GripperProfile::code() const {
  std::string out;
  out += to_code(compliance);
  out += '-';
  out += to_code(grip_type);
  out += '-';
  out += to_code(ideal_shape);
  return out;
}

ParticipantGroup ParticipantGroup::from_label(std::string_view label) {
  if (label == "bachelor") return {Kind::Bachelor, "bachelor"};
  if (label == "master") return {Kind::Master, "master"};
  if (label == "untrained") return {Kind::UntrainedColleague, "untrained"};
  if (label == "experienced") return {Kind::Experienced, "experienced"};
  return {Kind::Other, std::string(label)};
}

namespace {

void check_marks(const std::string& record, const std::vector<PhaseMark>& marks,
                 std::vector<Violation>& out) {
  for (std::size_t i = 0; i < marks.size(); ++i) {
    if (!(marks[i].t_start_s < marks[i].t_end_s)) {
      out.push_back({record, "phase mark must satisfy t_start < t_end"});
    }
    if (i > 0 && marks[i].t_start_s < marks[i - 1].t_end_s) {
      out.push_back({record, "phase marks must be ordered and non-overlapping"});
    }
  }
}

} // namespace

std::vector<Violation> validate_session(const Session& session) {
  std::vector<Violation> out;
  const Manifest& m = session.manifest;

  if (m.schema_version != kSchemaVersion) {
    out.push_back({"manifest", "unsupported schema_version '" + m.schema_version + "'"});
  }
  if (m.gripper_name.empty()) out.push_back({"manifest", "gripper_name must be non-empty"});
  if (m.platform_name.empty()) out.push_back({"manifest", "platform_name must be non-empty"});
  if (m.gripper_profile) {
    const GripperProfile& p = *m.gripper_profile;
    if (!(p.range_min_mm < p.range_max_mm)) {
      out.push_back({"manifest", "gripping range must satisfy min < max"});
    }
  }
  if (m.hold_nominal_s && *m.hold_nominal_s <= 0) {
    out.push_back({"manifest", "hold_nominal_s must be positive"});
  }

  for (const auto& [id, a] : session.artifacts) {
    const std::string record = "artifact " + id;
    if (id.empty()) out.push_back({record, "artifact id must be non-empty"});
    if (id != a.id) out.push_back({record, "artifact key and id field disagree"});
    if (!(a.dimension_mm > 0)) out.push_back({record, "characteristic dimension must be positive"});
    if (a.mass_g < 0) out.push_back({record, "mass must be non-negative"});
    if (a.finger_length_m && *a.finger_length_m <= 0) {
      out.push_back({record, "finger length must be positive"});
    }
  }

  std::set<std::tuple<std::string, int, int>> attempt_keys;
  for (const GraspAttempt& a : session.attempts) {
    const std::string record = "attempt " + a.object_id + "/" + std::to_string(a.pose_index) +
                               "/" + std::to_string(a.attempt_index);
    if (a.object_id.empty()) out.push_back({record, "object_id must be non-empty"});
    if (a.pose_index < 1) out.push_back({record, "pose_index must be >= 1"});
    if (a.attempt_index < 1) out.push_back({record, "attempt_index must be >= 1"});
    if (!attempt_keys.insert({a.object_id, a.pose_index, a.attempt_index}).second) {
      out.push_back({record, "(object, pose, attempt) key must be unique"});
    }
    const AttemptEvents& e = a.events;
    if (e.t_lift_5cm_s && *e.t_lift_5cm_s < e.t_grasp_cmd_s) {
      out.push_back({record, "t_lift_5cm must not precede t_grasp_cmd"});
    }
    if (e.t_release_done_s && *e.t_release_done_s < e.t_grasp_cmd_s) {
      out.push_back({record, "t_release_done must not precede t_grasp_cmd"});
    }
    if (e.t_lift_5cm_s && e.t_release_done_s && *e.t_release_done_s < *e.t_lift_5cm_s) {
      out.push_back({record, "t_release_done must not precede t_lift_5cm"});
    }
    if (e.hold_duration_s && *e.hold_duration_s < 0) {
      out.push_back({record, "hold_duration must be non-negative"});
    }
  }

  for (const TransferCycle& c : session.transfer_cycles) {
    const std::string record = "transfer " + c.participant_id;
    if (c.participant_id.empty()) out.push_back({record, "participant_id must be non-empty"});
    if (!(c.duration_s > 0)) out.push_back({record, "cycle duration must be positive"});
  }

  for (const auto& [id, trace] : session.traces) {
    const std::string record = "trace " + id;
    for (std::size_t i = 1; i < trace.samples.size(); ++i) {
      if (!(trace.samples[i].t_s > trace.samples[i - 1].t_s)) {
        out.push_back({record, "timestamps must be strictly increasing"});
        break;
      }
    }
    const bool integrable = trace.kind == TraceKind::Power || trace.kind == TraceKind::VoltageCurrent;
    if (integrable && trace.samples.size() < 2) {
      out.push_back({record, "power traces need at least 2 samples for integration"});
    }
    check_marks(record, trace.phase_marks, out);
    if (!trace.samples.empty() && !trace.phase_marks.empty()) {
      if (trace.phase_marks.front().t_start_s < trace.t_front() ||
          trace.phase_marks.back().t_end_s > trace.t_back()) {
        out.push_back({record, "phase marks must lie within the sampled span"});
      }
    }
  }

  std::set<std::string> bound_ids;
  std::set<std::tuple<int, std::string, int, int>> role_keys;
  for (const TraceBinding& b : m.trace_index) {
    const std::string record = "trace binding " + b.trace_id;
    if (!bound_ids.insert(b.trace_id).second) {
      out.push_back({record, "trace id bound more than once"});
    }
    if (b.role != TraceRole::Free) {
      const auto key = std::make_tuple(static_cast<int>(b.role), b.artifact_id.value_or(""),
                                       b.trial.value_or(0),
                                       b.role == TraceRole::Strength ? b.finger.value_or(0) : 0);
      if (!role_keys.insert(key).second) {
        out.push_back({record, "duplicate trial binding for this role"});
      }
    }
    if (session.traces.find(b.trace_id) == session.traces.end()) {
      out.push_back({record, "dangling trace reference (no such trace)"});
    }
    if (b.artifact_id && session.artifacts.find(*b.artifact_id) == session.artifacts.end()) {
      out.push_back({record, "dangling artifact reference '" + *b.artifact_id + "'"});
    }
    if (b.trial && *b.trial < 1) out.push_back({record, "trial must be >= 1"});
    if (b.finger && *b.finger < 1) out.push_back({record, "finger must be >= 1"});
    if (b.object_mass_g && *b.object_mass_g < 0) {
      out.push_back({record, "object mass must be non-negative"});
    }
    if (b.applied_torque_nm && *b.applied_torque_nm <= 0) {
      out.push_back({record, "applied torque must be positive"});
    }
    const bool per_artifact_trial = b.role == TraceRole::Strength ||
                                    b.role == TraceRole::Slip || b.role == TraceRole::Pull;
    if (per_artifact_trial && (!b.artifact_id || !b.trial)) {
      out.push_back({record, "strength, slip and pull traces need an artifact and a trial"});
    }
    if (b.role == TraceRole::Energy && !b.trial) {
      out.push_back({record, "energy traces need a trial"});
    }
  }
  for (const auto& [id, trace] : session.traces) {
    (void)trace;
    if (bound_ids.find(id) == bound_ids.end()) {
      out.push_back({"trace " + id, "trace present but not listed in the manifest trace index"});
    }
  }
  for (const CycleTrial& c : m.cycle_trials) {
    const std::string record = "cycle trial " + c.artifact_id;
    if (session.artifacts.find(c.artifact_id) == session.artifacts.end()) {
      out.push_back({record, "dangling artifact reference"});
    }
    if (!(c.t_stop_s > c.t_start_s)) {
      out.push_back({record, "t_stop must follow t_start"});
    }
  }

  return out;
}

} // namespace cegb
