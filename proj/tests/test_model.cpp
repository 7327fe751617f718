#include <doctest.h>

#include <algorithm>
#include <string>

#include "cegb/error.hpp"
#include "cegb/model.hpp"
#include "cegb/synth.hpp"

using namespace cegb;

namespace {

bool has_violation(const std::vector<Violation>& vs, const std::string& needle) {
  return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) {
    return v.invariant.find(needle) != std::string::npos;
  });
}

Session minimal_session() {
  Session s;
  s.manifest.gripper_name = "g";
  s.manifest.platform_name = "p";
  return s;
}

SampledTrace two_sample_trace(TraceKind kind) {
  SampledTrace tr;
  tr.kind = kind;
  tr.samples = {{0, 1, 0}, {1, 2, 0}};
  return tr;
}

} // namespace

TEST_SUITE("model") {

TEST_CASE("profile codes concatenate compliance, grip and shape") {
  GripperProfile p;
  p.compliance = Compliance::SemiTwo;
  p.grip_type = GripType::Pinch;
  p.ideal_shape = IdealShape::Box;
  CHECK(p.code() == "2S-P-B");

  p.compliance = Compliance::Rigid;
  p.grip_type = GripType::Wrap;
  p.ideal_shape = IdealShape::Cylinder;
  CHECK(p.code() == "R-W-C");

  p.compliance = Compliance::Full;
  p.ideal_shape = IdealShape::Sphere;
  CHECK(p.code() == "F-W-S");

  p.compliance = Compliance::SemiOne;
  CHECK(p.code() == "1S-W-S");
}

TEST_CASE("enum codes round-trip") {
  for (Compliance c : {Compliance::Rigid, Compliance::SemiOne, Compliance::SemiTwo,
                       Compliance::Full}) {
    CHECK(compliance_from_code(to_code(c)) == c);
  }
  for (GripType g : {GripType::Wrap, GripType::Pinch}) {
    CHECK(grip_type_from_code(to_code(g)) == g);
  }
  for (ArtifactShape s : {ArtifactShape::Cylinder, ArtifactShape::Box, ArtifactShape::Sphere}) {
    CHECK(artifact_shape_from_code(to_code(s)) == s);
  }
  for (Phase p : {Phase::Approach, Phase::Grasp, Phase::Hold, Phase::Release}) {
    CHECK(phase_from_code(to_code(p)) == p);
  }
  for (TraceRole r : {TraceRole::Free, TraceRole::Strength, TraceRole::Slip, TraceRole::Energy,
                      TraceRole::Pull}) {
    CHECK(trace_role_from_code(to_code(r)) == r);
  }
  CHECK_THROWS_AS(compliance_from_code("3S"), Error);
  CHECK_THROWS_AS(phase_from_code("wiggle"), Error);
}

TEST_CASE("participant groups canonicalize known labels") {
  CHECK(ParticipantGroup::from_label("bachelor").kind == ParticipantGroup::Kind::Bachelor);
  CHECK(ParticipantGroup::from_label("master").kind == ParticipantGroup::Kind::Master);
  CHECK(ParticipantGroup::from_label("untrained").kind ==
        ParticipantGroup::Kind::UntrainedColleague);
  CHECK(ParticipantGroup::from_label("experienced").kind == ParticipantGroup::Kind::Experienced);
  const ParticipantGroup other = ParticipantGroup::from_label("night shift");
  CHECK(other.kind == ParticipantGroup::Kind::Other);
  CHECK(other.label == "night shift");
}

TEST_CASE("a generated session validates cleanly") {
  CHECK(validate_session(gen_mixed(11).session).empty());
  CHECK(validate_session(gen_replica(42).session).empty());
}

TEST_CASE("manifest fields are checked") {
  Session s = minimal_session();
  s.manifest.gripper_name.clear();
  s.manifest.gripper_profile = GripperProfile{};
  s.manifest.gripper_profile->range_min_mm = 90;
  s.manifest.gripper_profile->range_max_mm = 40;
  s.manifest.hold_nominal_s = -1.0;
  const auto vs = validate_session(s);
  CHECK(has_violation(vs, "gripper_name"));
  CHECK(has_violation(vs, "min < max"));
  CHECK(has_violation(vs, "hold_nominal_s"));
}

TEST_CASE("attempt keys must be unique and events ordered") {
  Session s = minimal_session();
  GraspAttempt a;
  a.object_id = "obj";
  a.events.t_grasp_cmd_s = 10.0;
  a.events.t_lift_5cm_s = 9.0; // precedes the command
  s.attempts.push_back(a);
  s.attempts.push_back(a); // duplicate (object, pose, attempt)
  const auto vs = validate_session(s);
  CHECK(has_violation(vs, "t_lift_5cm"));
  CHECK(has_violation(vs, "unique"));
}

TEST_CASE("traces must be strictly monotonic") {
  Session s = minimal_session();
  SampledTrace tr = two_sample_trace(TraceKind::Force);
  tr.samples.push_back({1.0, 3, 0}); // repeats the last timestamp
  s.traces["t"] = tr;
  s.manifest.trace_index.push_back({"t", "traces/t.csv", TraceRole::Free, {}, {}, {}, {}, {}});
  CHECK(has_violation(validate_session(s), "strictly increasing"));
}

TEST_CASE("phase marks must be ordered and inside the span") {
  Session s = minimal_session();
  SampledTrace tr = two_sample_trace(TraceKind::Power);
  tr.phase_marks = {{Phase::Grasp, 0.5, 0.2}};
  s.traces["t"] = tr;
  s.manifest.trace_index.push_back({"t", "traces/t.csv", TraceRole::Free, {}, {}, {}, {}, {}});
  CHECK(has_violation(validate_session(s), "t_start < t_end"));

  s.traces["t"].phase_marks = {{Phase::Grasp, 0.0, 0.6}, {Phase::Hold, 0.5, 1.0}};
  CHECK(has_violation(validate_session(s), "non-overlapping"));

  s.traces["t"].phase_marks = {{Phase::Grasp, 0.0, 5.0}};
  CHECK(has_violation(validate_session(s), "within the sampled span"));
}

TEST_CASE("role bindings need their artifact, trial and references") {
  Session s = minimal_session();
  s.traces["t"] = two_sample_trace(TraceKind::Force);
  s.manifest.trace_index.push_back(
      {"t", "traces/t.csv", TraceRole::Strength, {}, {}, {}, {}, {}});
  CHECK(has_violation(validate_session(s), "need an artifact and a trial"));

  s.manifest.trace_index[0].artifact_id = "ghost";
  s.manifest.trace_index[0].trial = 1;
  CHECK(has_violation(validate_session(s), "dangling artifact reference"));

  s.manifest.trace_index.push_back(
      {"missing", "traces/missing.csv", TraceRole::Free, {}, {}, {}, {}, {}});
  CHECK(has_violation(validate_session(s), "no such trace"));
}

TEST_CASE("duplicate trial bindings are flagged") {
  Session s = minimal_session();
  ArtifactSpec art;
  art.id = "cyl";
  art.dimension_mm = 50;
  s.artifacts["cyl"] = art;
  s.traces["a"] = two_sample_trace(TraceKind::Tangential);
  s.traces["b"] = two_sample_trace(TraceKind::Tangential);
  s.manifest.trace_index.push_back({"a", "traces/a.csv", TraceRole::Slip, "cyl", 1, {}, {}, {}});
  s.manifest.trace_index.push_back({"b", "traces/b.csv", TraceRole::Slip, "cyl", 1, {}, {}, {}});
  CHECK(has_violation(validate_session(s), "duplicate trial binding"));

  // Different fingers of one strength trial are fine.
  Session s2 = minimal_session();
  s2.artifacts["cyl"] = art;
  s2.traces["f1"] = two_sample_trace(TraceKind::Force);
  s2.traces["f2"] = two_sample_trace(TraceKind::Force);
  s2.manifest.trace_index.push_back(
      {"f1", "traces/f1.csv", TraceRole::Strength, "cyl", 1, 1, {}, {}});
  s2.manifest.trace_index.push_back(
      {"f2", "traces/f2.csv", TraceRole::Strength, "cyl", 1, 2, {}, {}});
  CHECK_FALSE(has_violation(validate_session(s2), "duplicate trial binding"));
}

TEST_CASE("cycle trials reference known artifacts and run forward") {
  Session s = minimal_session();
  s.manifest.cycle_trials.push_back({"ghost", 5.0, 4.0});
  const auto vs = validate_session(s);
  CHECK(has_violation(vs, "dangling artifact reference"));
  CHECK(has_violation(vs, "t_stop must follow t_start"));
}

TEST_CASE("unlisted trace files are flagged") {
  Session s = minimal_session();
  s.traces["orphan"] = two_sample_trace(TraceKind::Force);
  CHECK(has_violation(validate_session(s), "not listed in the manifest"));
}

TEST_CASE("transfer cycles need a participant and a positive duration") {
  Session s = minimal_session();
  TransferCycle c;
  c.group = ParticipantGroup::from_label("master");
  c.duration_s = 0.0;
  s.transfer_cycles.push_back(c);
  const auto vs = validate_session(s);
  CHECK(has_violation(vs, "participant_id"));
  CHECK(has_violation(vs, "duration must be positive"));
}

TEST_CASE("transfer cycle success means no fault of any kind") {
  TransferCycle c;
  CHECK(c.success());
  c.fault_software = true;
  CHECK_FALSE(c.success());
}

} // TEST_SUITE
