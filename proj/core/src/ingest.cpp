#include "cegb/ingest.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "cegb/error.hpp"

namespace cegb {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kAttemptsHeader =
    "object_id,pose_index,attempt_index,t_grasp_cmd_s,t_lift5cm_s,hold_duration_s,slip,"
    "t_release_done_s,outcome_override";
constexpr const char* kTransfersHeader =
    "participant_id,group,duration_s,fault_mech,fault_elec,fault_sw";
constexpr const char* kPhasesHeader = "phase,t_start_s,t_end_s";

const char* trace_header(TraceKind kind) {
  switch (kind) {
    case TraceKind::Force: return "t_s,f_N";
    case TraceKind::Tangential: return "t_s,tan_N";
    case TraceKind::Pull: return "t_s,pull_N";
    case TraceKind::Power: return "t_s,p_W";
    case TraceKind::VoltageCurrent: return "t_s,u_V,i_A";
  }
  return "";
}

void trim(std::string& s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  s.erase(0, i);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    trim(cell);
    out.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

[[noreturn]] void parse_fail(const fs::path& file, std::size_t line, const std::string& why) {
  raise(errc::parse_error, file.string() + ":" + std::to_string(line) + ": " + why);
}

double parse_double(const std::string& cell, const fs::path& file, std::size_t line) {
  double v = 0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last) {
    parse_fail(file, line, "malformed numeric cell '" + cell + "'");
  }
  if (!std::isfinite(v)) parse_fail(file, line, "non-finite value '" + cell + "'");
  return v;
}

int parse_int(const std::string& cell, const fs::path& file, std::size_t line) {
  int v = 0;
  auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size()) {
    parse_fail(file, line, "malformed integer cell '" + cell + "'");
  }
  return v;
}

bool parse_flag(const std::string& cell, const fs::path& file, std::size_t line) {
  if (cell == "0") return false;
  if (cell == "1") return true;
  parse_fail(file, line, "flag cell must be 0 or 1, got '" + cell + "'");
}

// Reads non-empty lines; returns false once the file is exhausted.
class LineReader {
public:
  LineReader(const fs::path& path) : path_(path), in_(path) {
    if (!in_) raise(errc::io_error, "cannot open " + path.string());
  }

  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++lineno_;
      trim(line);
      if (!line.empty()) return true;
    }
    return false;
  }

  std::size_t lineno() const { return lineno_; }
  const fs::path& path() const { return path_; }

private:
  fs::path path_;
  std::ifstream in_;
  std::size_t lineno_ = 0;
};

SampledTrace read_trace_csv(const fs::path& file) {
  LineReader reader(file);
  std::string line;
  if (!reader.next(line)) raise(errc::unit_error, file.string() + ": missing header row");

  SampledTrace trace;
  std::size_t columns = 2;
  if (line == trace_header(TraceKind::Force)) {
    trace.kind = TraceKind::Force;
  } else if (line == trace_header(TraceKind::Tangential)) {
    trace.kind = TraceKind::Tangential;
  } else if (line == trace_header(TraceKind::Pull)) {
    trace.kind = TraceKind::Pull;
  } else if (line == trace_header(TraceKind::Power)) {
    trace.kind = TraceKind::Power;
  } else if (line == trace_header(TraceKind::VoltageCurrent)) {
    trace.kind = TraceKind::VoltageCurrent;
    columns = 3;
  } else {
    raise(errc::unit_error,
          file.string() + ": unknown trace header '" + line +
              "' (expected one of: t_s,f_N | t_s,tan_N | t_s,pull_N | t_s,p_W | t_s,u_V,i_A)");
  }

  while (reader.next(line)) {
    const std::vector<std::string> cells = split_csv(line);
    if (cells.size() != columns) {
      parse_fail(file, reader.lineno(),
                 "expected " + std::to_string(columns) + " cells, got " +
                     std::to_string(cells.size()));
    }
    TraceSample s;
    s.t_s = parse_double(cells[0], file, reader.lineno());
    s.v0 = parse_double(cells[1], file, reader.lineno());
    if (columns == 3) s.v1 = parse_double(cells[2], file, reader.lineno());
    trace.samples.push_back(s);
  }
  return trace;
}

std::vector<PhaseMark> read_phases_csv(const fs::path& file) {
  LineReader reader(file);
  std::string line;
  if (!reader.next(line)) raise(errc::unit_error, file.string() + ": missing header row");
  if (line != kPhasesHeader) {
    raise(errc::unit_error,
          file.string() + ": unknown phases header '" + line + "' (expected '" +
              kPhasesHeader + "')");
  }
  std::vector<PhaseMark> marks;
  while (reader.next(line)) {
    const std::vector<std::string> cells = split_csv(line);
    if (cells.size() != 3) {
      parse_fail(file, reader.lineno(), "expected 3 cells, got " + std::to_string(cells.size()));
    }
    PhaseMark m;
    try {
      m.phase = phase_from_code(cells[0]);
    } catch (const Error&) {
      parse_fail(file, reader.lineno(), "unknown phase '" + cells[0] + "'");
    }
    m.t_start_s = parse_double(cells[1], file, reader.lineno());
    m.t_end_s = parse_double(cells[2], file, reader.lineno());
    marks.push_back(m);
  }
  return marks;
}

std::vector<GraspAttempt> read_attempts_csv(const fs::path& file) {
  LineReader reader(file);
  std::string line;
  if (!reader.next(line)) raise(errc::unit_error, file.string() + ": missing header row");
  if (line != kAttemptsHeader) {
    raise(errc::unit_error,
          file.string() + ": unknown attempts header '" + line + "' (expected '" +
              kAttemptsHeader + "')");
  }
  std::vector<GraspAttempt> attempts;
  while (reader.next(line)) {
    const std::vector<std::string> cells = split_csv(line);
    if (cells.size() != 9) {
      parse_fail(file, reader.lineno(), "expected 9 cells, got " + std::to_string(cells.size()));
    }
    GraspAttempt a;
    a.object_id = cells[0];
    a.pose_index = parse_int(cells[1], file, reader.lineno());
    a.attempt_index = parse_int(cells[2], file, reader.lineno());
    a.events.t_grasp_cmd_s = parse_double(cells[3], file, reader.lineno());
    if (!cells[4].empty()) a.events.t_lift_5cm_s = parse_double(cells[4], file, reader.lineno());
    if (!cells[5].empty()) {
      a.events.hold_duration_s = parse_double(cells[5], file, reader.lineno());
    }
    a.events.slip_during_hold = parse_flag(cells[6], file, reader.lineno());
    if (!cells[7].empty()) {
      a.events.t_release_done_s = parse_double(cells[7], file, reader.lineno());
    }
    if (!cells[8].empty()) {
      if (cells[8] == "success") {
        a.outcome_override = Outcome::Success;
      } else if (cells[8] == "failure") {
        a.outcome_override = Outcome::Failure;
      } else {
        parse_fail(file, reader.lineno(),
                   "outcome_override must be success/failure/empty, got '" + cells[8] + "'");
      }
    }
    attempts.push_back(a);
  }
  return attempts;
}

std::vector<TransferCycle> read_transfers_csv(const fs::path& file) {
  LineReader reader(file);
  std::string line;
  if (!reader.next(line)) raise(errc::unit_error, file.string() + ": missing header row");
  if (line != kTransfersHeader) {
    raise(errc::unit_error,
          file.string() + ": unknown transfers header '" + line + "' (expected '" +
              kTransfersHeader + "')");
  }
  std::vector<TransferCycle> cycles;
  while (reader.next(line)) {
    const std::vector<std::string> cells = split_csv(line);
    if (cells.size() != 6) {
      parse_fail(file, reader.lineno(), "expected 6 cells, got " + std::to_string(cells.size()));
    }
    TransferCycle c;
    c.participant_id = cells[0];
    c.group = ParticipantGroup::from_label(cells[1]);
    c.duration_s = parse_double(cells[2], file, reader.lineno());
    c.fault_mechanical = parse_flag(cells[3], file, reader.lineno());
    c.fault_electrical = parse_flag(cells[4], file, reader.lineno());
    c.fault_software = parse_flag(cells[5], file, reader.lineno());
    cycles.push_back(c);
  }
  return cycles;
}

double require_number(const json& j, const std::string& key, const fs::path& file) {
  if (!j.contains(key) || !j[key].is_number()) {
    raise(errc::parse_error, file.string() + ": missing or non-numeric '" + key + "'");
  }
  return j[key].get<double>();
}

std::string require_string(const json& j, const std::string& key, const fs::path& file) {
  if (!j.contains(key) || !j[key].is_string()) {
    raise(errc::parse_error, file.string() + ": missing or non-string '" + key + "'");
  }
  return j[key].get<std::string>();
}

fs::path sidecar_path(const fs::path& trace_file) {
  fs::path p = trace_file;
  p.replace_extension(".phases.csv");
  return p;
}

Manifest parse_manifest(const json& j, const fs::path& file, Session& session) {
  Manifest m;
  m.schema_version = require_string(j, "schema_version", file);
  if (m.schema_version != kSchemaVersion) {
    raise(errc::schema_version_unsupported,
          file.string() + ": schema_version '" + m.schema_version + "' (supported: '" +
              std::string(kSchemaVersion) + "')");
  }
  m.gripper_name = require_string(j, "gripper_name", file);
  m.platform_name = require_string(j, "platform_name", file);
  if (j.contains("notes") && j["notes"].is_string()) {
    m.operator_notes = j["notes"].get<std::string>();
  }
  if (j.contains("hold_nominal_s")) m.hold_nominal_s = require_number(j, "hold_nominal_s", file);

  if (j.contains("gripper_profile")) {
    const json& p = j["gripper_profile"];
    GripperProfile gp;
    gp.compliance = compliance_from_code(require_string(p, "compliance", file));
    gp.grip_type = grip_type_from_code(require_string(p, "grip_type", file));
    gp.ideal_shape = ideal_shape_from_code(require_string(p, "ideal_shape", file));
    if (!p.contains("range_mm") || !p["range_mm"].is_array() || p["range_mm"].size() != 2) {
      raise(errc::parse_error, file.string() + ": gripper_profile.range_mm must be [min, max]");
    }
    gp.range_min_mm = p["range_mm"][0].get<double>();
    gp.range_max_mm = p["range_mm"][1].get<double>();
    m.gripper_profile = gp;
  }

  if (j.contains("artifacts")) {
    for (const json& a : j["artifacts"]) {
      ArtifactSpec spec;
      spec.id = require_string(a, "id", file);
      spec.shape = artifact_shape_from_code(require_string(a, "shape", file));
      spec.dimension_mm = require_number(a, "dimension_mm", file);
      spec.mass_g = require_number(a, "mass_g", file);
      if (a.contains("coating") && a["coating"].is_string()) {
        spec.coating = a["coating"].get<std::string>();
      }
      if (a.contains("finger_length_m")) {
        spec.finger_length_m = require_number(a, "finger_length_m", file);
      }
      session.artifacts[spec.id] = spec;
    }
  }

  if (j.contains("traces")) {
    for (const json& t : j["traces"]) {
      TraceBinding b;
      b.trace_id = require_string(t, "id", file);
      b.file = t.contains("file") ? require_string(t, "file", file)
                                  : "traces/" + b.trace_id + ".csv";
      b.role = t.contains("role") ? trace_role_from_code(require_string(t, "role", file))
                                  : TraceRole::Free;
      if (t.contains("artifact")) b.artifact_id = require_string(t, "artifact", file);
      if (t.contains("trial")) b.trial = static_cast<int>(require_number(t, "trial", file));
      if (t.contains("finger")) b.finger = static_cast<int>(require_number(t, "finger", file));
      if (t.contains("object_mass_g")) {
        b.object_mass_g = require_number(t, "object_mass_g", file);
      }
      if (t.contains("applied_torque_Nm")) {
        b.applied_torque_nm = require_number(t, "applied_torque_Nm", file);
      }
      m.trace_index.push_back(b);
    }
  }

  if (j.contains("cycles")) {
    for (const json& c : j["cycles"]) {
      CycleTrial trial;
      trial.artifact_id = require_string(c, "artifact", file);
      trial.t_start_s = require_number(c, "t_start_s", file);
      trial.t_stop_s = require_number(c, "t_stop_s", file);
      m.cycle_trials.push_back(trial);
    }
  }
  return m;
}

} // namespace

Session load_session_raw(const fs::path& dir) {
  const fs::path manifest_path = dir / "session.json";
  if (!fs::exists(manifest_path)) {
    raise(errc::missing_manifest, "no session.json under " + dir.string());
  }

  std::ifstream in(manifest_path);
  if (!in) raise(errc::io_error, "cannot open " + manifest_path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    raise(errc::parse_error, manifest_path.string() + ": " + e.what());
  }

  Session session;
  session.manifest = parse_manifest(j, manifest_path, session);

  for (const TraceBinding& b : session.manifest.trace_index) {
    const fs::path trace_path = dir / b.file;
    if (!fs::exists(trace_path)) {
      raise(errc::io_error, "missing trace file " + trace_path.string());
    }
    SampledTrace trace = read_trace_csv(trace_path);
    const fs::path phases = sidecar_path(trace_path);
    if (fs::exists(phases)) trace.phase_marks = read_phases_csv(phases);
    session.traces[b.trace_id] = std::move(trace);
  }

  const fs::path attempts_path = dir / "attempts.csv";
  if (fs::exists(attempts_path)) session.attempts = read_attempts_csv(attempts_path);

  const fs::path transfers_path = dir / "transfers.csv";
  if (fs::exists(transfers_path)) session.transfer_cycles = read_transfers_csv(transfers_path);

  return session;
}

Session load_session(const fs::path& dir) {
  Session session = load_session_raw(dir);
  const std::vector<Violation> violations = validate_session(session);
  if (!violations.empty()) {
    std::string msg = dir.string() + ": session fails validation (" +
                      std::to_string(violations.size()) + " violation(s))";
    for (std::size_t i = 0; i < violations.size() && i < 3; ++i) {
      msg += "; " + violations[i].record + ": " + violations[i].invariant;
    }
    raise(errc::parse_error, msg);
  }
  return session;
}

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(errc::io_error, "cannot write " + path.string());
  out << text;
  if (!out) raise(errc::io_error, "write failed for " + path.string());
}

std::string transfer_row(const TransferCycle& c) {
  std::string row = c.participant_id + "," + c.group.label + "," + format_double(c.duration_s);
  row += c.fault_mechanical ? ",1" : ",0";
  row += c.fault_electrical ? ",1" : ",0";
  row += c.fault_software ? ",1" : ",0";
  return row;
}

json manifest_to_json(const Session& session) {
  const Manifest& m = session.manifest;
  json j;
  j["schema_version"] = m.schema_version;
  j["gripper_name"] = m.gripper_name;
  j["platform_name"] = m.platform_name;
  if (m.operator_notes) j["notes"] = *m.operator_notes;
  if (m.hold_nominal_s) j["hold_nominal_s"] = *m.hold_nominal_s;
  if (m.gripper_profile) {
    const GripperProfile& p = *m.gripper_profile;
    j["gripper_profile"] = {{"compliance", to_code(p.compliance)},
                            {"grip_type", to_code(p.grip_type)},
                            {"ideal_shape", to_code(p.ideal_shape)},
                            {"range_mm", {p.range_min_mm, p.range_max_mm}}};
  }
  if (!session.artifacts.empty()) {
    json arr = json::array();
    for (const auto& [id, a] : session.artifacts) {
      json e;
      e["id"] = a.id;
      e["shape"] = to_code(a.shape);
      e["dimension_mm"] = a.dimension_mm;
      e["mass_g"] = a.mass_g;
      if (a.coating) e["coating"] = *a.coating;
      if (a.finger_length_m) e["finger_length_m"] = *a.finger_length_m;
      arr.push_back(e);
    }
    j["artifacts"] = arr;
  }
  if (!m.trace_index.empty()) {
    json arr = json::array();
    for (const TraceBinding& b : m.trace_index) {
      json e;
      e["id"] = b.trace_id;
      e["file"] = b.file;
      e["role"] = to_code(b.role);
      if (b.artifact_id) e["artifact"] = *b.artifact_id;
      if (b.trial) e["trial"] = *b.trial;
      if (b.finger) e["finger"] = *b.finger;
      if (b.object_mass_g) e["object_mass_g"] = *b.object_mass_g;
      if (b.applied_torque_nm) e["applied_torque_Nm"] = *b.applied_torque_nm;
      arr.push_back(e);
    }
    j["traces"] = arr;
  }
  if (!m.cycle_trials.empty()) {
    json arr = json::array();
    for (const CycleTrial& c : m.cycle_trials) {
      arr.push_back(
          {{"artifact", c.artifact_id}, {"t_start_s", c.t_start_s}, {"t_stop_s", c.t_stop_s}});
    }
    j["cycles"] = arr;
  }
  return j;
}

} // namespace

void write_session(const Session& session, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) raise(errc::io_error, "cannot create " + dir.string());

  write_text(dir / "session.json", manifest_to_json(session).dump(2) + "\n");

  if (!session.manifest.trace_index.empty()) {
    for (const TraceBinding& b : session.manifest.trace_index) {
      auto it = session.traces.find(b.trace_id);
      if (it == session.traces.end()) {
        raise(errc::unknown_trace, "trace index entry '" + b.trace_id + "' has no trace data");
      }
      const SampledTrace& trace = it->second;
      const fs::path trace_path = dir / b.file;
      fs::create_directories(trace_path.parent_path(), ec);
      if (ec) raise(errc::io_error, "cannot create " + trace_path.parent_path().string());

      std::string text = trace_header(trace.kind);
      text += '\n';
      const bool three = trace.kind == TraceKind::VoltageCurrent;
      for (const TraceSample& s : trace.samples) {
        text += format_double(s.t_s);
        text += ',';
        text += format_double(s.v0);
        if (three) {
          text += ',';
          text += format_double(s.v1);
        }
        text += '\n';
      }
      write_text(trace_path, text);

      const fs::path phases = sidecar_path(trace_path);
      if (!trace.phase_marks.empty()) {
        std::string ptext = kPhasesHeader;
        ptext += '\n';
        for (const PhaseMark& mark : trace.phase_marks) {
          ptext += to_code(mark.phase);
          ptext += ',';
          ptext += format_double(mark.t_start_s);
          ptext += ',';
          ptext += format_double(mark.t_end_s);
          ptext += '\n';
        }
        write_text(phases, ptext);
      } else if (fs::exists(phases)) {
        fs::remove(phases);
      }
    }
  }

  if (session.attempts.empty()) {
    fs::remove(dir / "attempts.csv", ec);
  } else {
    std::string text = kAttemptsHeader;
    text += '\n';
    for (const GraspAttempt& a : session.attempts) {
      const AttemptEvents& e = a.events;
      text += a.object_id + "," + std::to_string(a.pose_index) + "," +
              std::to_string(a.attempt_index) + "," + format_double(e.t_grasp_cmd_s) + ",";
      if (e.t_lift_5cm_s) text += format_double(*e.t_lift_5cm_s);
      text += ',';
      if (e.hold_duration_s) text += format_double(*e.hold_duration_s);
      text += ',';
      text += e.slip_during_hold ? '1' : '0';
      text += ',';
      if (e.t_release_done_s) text += format_double(*e.t_release_done_s);
      text += ',';
      if (a.outcome_override) {
        text += *a.outcome_override == Outcome::Success ? "success" : "failure";
      }
      text += '\n';
    }
    write_text(dir / "attempts.csv", text);
  }

  if (session.transfer_cycles.empty()) {
    fs::remove(dir / "transfers.csv", ec);
  } else {
    std::string text = kTransfersHeader;
    text += '\n';
    for (const TransferCycle& c : session.transfer_cycles) {
      text += transfer_row(c);
      text += '\n';
    }
    write_text(dir / "transfers.csv", text);
  }
}

void append_transfer_cycle(const fs::path& csv, const TransferCycle& cycle) {
  const bool fresh = !fs::exists(csv) || fs::file_size(csv) == 0;
  if (fresh && csv.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(csv.parent_path(), ec);
  }
  std::ofstream out(csv, std::ios::binary | std::ios::app);
  if (!out) raise(errc::io_error, "cannot open " + csv.string());
  if (fresh) out << kTransfersHeader << '\n';
  out << transfer_row(cycle) << '\n';
  if (!out) raise(errc::io_error, "write failed for " + csv.string());
}

} // namespace cegb
