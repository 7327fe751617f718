#include "cegb/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "cegb/error.hpp"
#include "cegb/ingest.hpp"
#include "cegb/version.hpp"

namespace cegb {

using nlohmann::json;

namespace {

std::string dim_key(double dim_mm) { return format_double(dim_mm); }

double artifact_dimension(const Session& session, const std::string& artifact_id) {
  return session.artifacts.at(artifact_id).dimension_mm;
}

} // namespace

Report analyze_session(const Session& session, const AnalyzeOptions& options) {
  Report r;
  r.meta.tool_version = std::string(kToolVersion);
  r.meta.report_schema = std::string(kReportSchemaVersion);
  r.meta.gripper_name = session.manifest.gripper_name;
  r.meta.platform_name = session.manifest.platform_name;
  r.meta.notes = session.manifest.operator_notes;
  r.meta.options = options;

  r.violations = validate_session(session);
  if (!r.violations.empty()) return r;

  BootstrapConfig cfg;
  cfg.resamples = options.bootstrap_resamples;
  cfg.confidence = options.confidence;
  cfg.seed = options.seed;

  if (!session.attempts.empty()) {
    r.ycb = ycb_aggregate(session.attempts, cfg, options.rules);
  }

  NistResult nist;

  {
    std::map<double, std::vector<std::pair<double, double>>> windows_by_dim;
    for (const CycleTrial& c : session.manifest.cycle_trials) {
      windows_by_dim[artifact_dimension(session, c.artifact_id)].push_back(
          {c.t_start_s, c.t_stop_s});
    }
    for (const auto& [dim, windows] : windows_by_dim) {
      BootstrapConfig sub = cfg;
      sub.seed = mix_seed(cfg.seed, "nist.cycle." + dim_key(dim));
      nist.cycle.push_back({dim, cycle_time(windows, sub)});
    }
  }

  // Strength: finger traces pooled per (artifact, trial); trial plateaus
  // also feed the per-artifact normal force used by mu_eff below.
  std::map<std::string, std::vector<double>> plateaus_by_artifact;
  {
    std::map<std::pair<std::string, int>, std::vector<SampledTrace>> fingers_by_trial;
    for (const TraceBinding& b : session.manifest.trace_index) {
      if (b.role != TraceRole::Strength) continue;
      fingers_by_trial[{*b.artifact_id, *b.trial}].push_back(session.traces.at(b.trace_id));
    }
    std::map<double, std::vector<double>> peaks, plateaus;
    for (const auto& [key, fingers] : fingers_by_trial) {
      const PeakPlateau pp =
          grasp_strength_trial(fingers, options.plateau_window_s, options.smoothing_window_s);
      const double dim = artifact_dimension(session, key.first);
      peaks[dim].push_back(pp.peak);
      plateaus[dim].push_back(pp.plateau);
      plateaus_by_artifact[key.first].push_back(pp.plateau);
    }
    for (const auto& [dim, values] : plateaus) {
      BootstrapConfig sub = cfg;
      sub.seed = mix_seed(cfg.seed, "nist.strength.peak." + dim_key(dim));
      const SummaryStat peak_stat = summarize(peaks[dim], sub);
      sub.seed = mix_seed(cfg.seed, "nist.strength.plateau." + dim_key(dim));
      nist.strength.push_back({dim, peak_stat, summarize(values, sub)});
    }
  }

  {
    std::map<std::pair<std::string, int>, const TraceBinding*> slip_trials;
    for (const TraceBinding& b : session.manifest.trace_index) {
      if (b.role == TraceRole::Slip) slip_trials[{*b.artifact_id, *b.trial}] = &b;
    }
    std::map<double, std::vector<double>> fslip, mu, qhold;
    for (const auto& [key, binding] : slip_trials) {
      std::optional<double> normals;
      auto it = plateaus_by_artifact.find(key.first);
      if (it != plateaus_by_artifact.end()) {
        std::vector<double> sorted = it->second;
        std::sort(sorted.begin(), sorted.end());
        normals = quantile(sorted, 0.5);
      }
      const ArtifactSpec& artifact = session.artifacts.at(key.first);
      const SlipTrial trial =
          slip_metrics(session.traces.at(binding->trace_id), normals,
                       binding->applied_torque_nm, artifact.finger_length_m, options.slip);
      const double dim = artifact.dimension_mm;
      fslip[dim].push_back(trial.f_slip_n);
      if (trial.mu_eff) mu[dim].push_back(*trial.mu_eff);
      if (trial.q_hold) qhold[dim].push_back(*trial.q_hold);
    }
    for (const auto& [dim, forces] : fslip) {
      SlipSummary row;
      row.dimension_mm = dim;
      BootstrapConfig sub = cfg;
      sub.seed = mix_seed(cfg.seed, "nist.slip." + dim_key(dim));
      row.f_slip_n = summarize(forces, sub);
      if (auto it = mu.find(dim); it != mu.end()) {
        sub.seed = mix_seed(cfg.seed, "nist.slip.mu." + dim_key(dim));
        row.mu_eff = summarize(it->second, sub);
      }
      if (auto it = qhold.find(dim); it != qhold.end()) {
        sub.seed = mix_seed(cfg.seed, "nist.slip.qhold." + dim_key(dim));
        row.q_hold = summarize(it->second, sub);
      }
      nist.slip.push_back(row);
    }
  }

  if (!nist.cycle.empty() || !nist.strength.empty() || !nist.slip.empty()) {
    r.nist = std::move(nist);
  }

  if (!session.transfer_cycles.empty()) {
    r.transfer = transfer_summary(session.transfer_cycles, cfg);
  }

  {
    std::map<std::pair<std::string, int>, EnergyTrial> trials_by_key;
    for (const TraceBinding& b : session.manifest.trace_index) {
      if (b.role != TraceRole::Energy) continue;
      const SampledTrace& trace = session.traces.at(b.trace_id);
      EnergyTrial t;
      t.trace = trace;
      t.marks = trace.phase_marks;
      t.object_mass_g = b.object_mass_g;
      trials_by_key[{b.artifact_id.value_or(""), *b.trial}] = std::move(t);
    }
    if (!trials_by_key.empty()) {
      std::vector<EnergyTrial> trials;
      trials.reserve(trials_by_key.size());
      for (auto& [key, t] : trials_by_key) trials.push_back(std::move(t));
      const double hold_nominal = session.manifest.hold_nominal_s.value_or(10.0);
      r.energy = energy_metrics(trials, hold_nominal, cfg, options.smoothing_window_s);
    }
  }

  {
    std::map<std::pair<std::string, int>, const TraceBinding*> pull_trials;
    for (const TraceBinding& b : session.manifest.trace_index) {
      if (b.role == TraceRole::Pull) pull_trials[{*b.artifact_id, *b.trial}] = &b;
    }
    std::map<double, PullTrials> per_dim;
    for (const auto& [key, binding] : pull_trials) {
      const double dim = artifact_dimension(session, key.first);
      per_dim[dim].dimension_mm = dim;
      per_dim[dim].traces.push_back(session.traces.at(binding->trace_id));
    }
    if (!per_dim.empty()) {
      std::vector<PullTrials> artifacts;
      artifacts.reserve(per_dim.size());
      for (auto& [dim, pulls] : per_dim) artifacts.push_back(std::move(pulls));
      r.iipb = iipb_metrics(artifacts, session.manifest.gripper_profile, cfg, options.slip);
    }
  }

  return r;
}

// --- JSON ---------------------------------------------------------------

namespace {

json to_json(const Interval& v) { return {{"lo", v.lo}, {"hi", v.hi}}; }

Interval interval_from(const json& j) {
  return {j.at("lo").get<double>(), j.at("hi").get<double>()};
}

json to_json(const SummaryStat& s) {
  return {{"method", std::string(SummaryStat::method)},
          {"n", s.n},
          {"median", s.median},
          {"q1", s.q1},
          {"q3", s.q3},
          {"ci95", to_json(s.ci95)}};
}

SummaryStat summary_from(const json& j) {
  SummaryStat s;
  s.n = j.at("n").get<std::size_t>();
  s.median = j.at("median").get<double>();
  s.q1 = j.at("q1").get<double>();
  s.q3 = j.at("q3").get<double>();
  s.ci95 = interval_from(j.at("ci95"));
  return s;
}

json to_json(const Proportion& p) {
  return {{"successes", p.successes},
          {"trials", p.trials},
          {"point", p.point},
          {"wilson", to_json(p.wilson)}};
}

Proportion proportion_from(const json& j) {
  Proportion p;
  p.successes = j.at("successes").get<std::uint64_t>();
  p.trials = j.at("trials").get<std::uint64_t>();
  p.point = j.at("point").get<double>();
  p.wilson = interval_from(j.at("wilson"));
  return p;
}

template <typename T, typename F>
json opt_json(const std::optional<T>& v, F&& f) {
  if (!v) return nullptr;
  return f(*v);
}

json to_json(const YcbResult& y) {
  json per_pose = json::array();
  for (const PoseStat& p : y.per_pose) {
    per_pose.push_back({{"object_id", p.object_id},
                        {"pose_index", p.pose_index},
                        {"success", to_json(p.success)}});
  }
  json per_object = json::array();
  for (const ObjectStat& o : y.per_object) {
    per_object.push_back({{"object_id", o.object_id},
                          {"poses", o.poses},
                          {"success_rate", o.success_rate}});
  }
  return {{"per_pose", per_pose},
          {"per_object", per_object},
          {"micro", to_json(y.micro)},
          {"macro", y.macro},
          {"macro_ci", to_json(y.macro_ci)},
          {"time_to_lift_s", opt_json(y.time_to_lift_s, [](const SummaryStat& s) { return to_json(s); })},
          {"time_to_release_s",
           opt_json(y.time_to_release_s, [](const SummaryStat& s) { return to_json(s); })}};
}

YcbResult ycb_from(const json& j) {
  YcbResult y;
  for (const json& e : j.at("per_pose")) {
    y.per_pose.push_back({e.at("object_id").get<std::string>(), e.at("pose_index").get<int>(),
                          proportion_from(e.at("success"))});
  }
  for (const json& e : j.at("per_object")) {
    y.per_object.push_back({e.at("object_id").get<std::string>(),
                            e.at("poses").get<std::size_t>(),
                            e.at("success_rate").get<double>()});
  }
  y.micro = proportion_from(j.at("micro"));
  y.macro = j.at("macro").get<double>();
  y.macro_ci = interval_from(j.at("macro_ci"));
  if (!j.at("time_to_lift_s").is_null()) y.time_to_lift_s = summary_from(j.at("time_to_lift_s"));
  if (!j.at("time_to_release_s").is_null()) {
    y.time_to_release_s = summary_from(j.at("time_to_release_s"));
  }
  return y;
}

json to_json(const NistResult& n) {
  json cycle = json::array();
  for (const CycleSummary& c : n.cycle) {
    cycle.push_back({{"dimension_mm", c.dimension_mm}, {"t_cycle_s", to_json(c.t_cycle_s)}});
  }
  json strength = json::array();
  for (const StrengthSummary& s : n.strength) {
    strength.push_back({{"dimension_mm", s.dimension_mm},
                        {"peak_n", to_json(s.peak_n)},
                        {"plateau_n", to_json(s.plateau_n)}});
  }
  json slip = json::array();
  for (const SlipSummary& s : n.slip) {
    slip.push_back(
        {{"dimension_mm", s.dimension_mm},
         {"f_slip_n", to_json(s.f_slip_n)},
         {"mu_eff", opt_json(s.mu_eff, [](const SummaryStat& v) { return to_json(v); })},
         {"q_hold", opt_json(s.q_hold, [](const SummaryStat& v) { return to_json(v); })}});
  }
  return {{"cycle", cycle}, {"strength", strength}, {"slip", slip}};
}

NistResult nist_from(const json& j) {
  NistResult n;
  for (const json& e : j.at("cycle")) {
    n.cycle.push_back({e.at("dimension_mm").get<double>(), summary_from(e.at("t_cycle_s"))});
  }
  for (const json& e : j.at("strength")) {
    n.strength.push_back({e.at("dimension_mm").get<double>(), summary_from(e.at("peak_n")),
                          summary_from(e.at("plateau_n"))});
  }
  for (const json& e : j.at("slip")) {
    SlipSummary s;
    s.dimension_mm = e.at("dimension_mm").get<double>();
    s.f_slip_n = summary_from(e.at("f_slip_n"));
    if (!e.at("mu_eff").is_null()) s.mu_eff = summary_from(e.at("mu_eff"));
    if (!e.at("q_hold").is_null()) s.q_hold = summary_from(e.at("q_hold"));
    n.slip.push_back(s);
  }
  return n;
}

json to_json(const TransferStats& t) {
  return {{"cycles", t.cycles},
          {"robustness", to_json(t.robustness)},
          {"mean_s", opt_json(t.mean_s, [](double v) { return json(v); })},
          {"duration_s", opt_json(t.duration_s, [](const SummaryStat& s) { return to_json(s); })}};
}

TransferStats transfer_stats_from(const json& j) {
  TransferStats t;
  t.cycles = j.at("cycles").get<std::size_t>();
  t.robustness = proportion_from(j.at("robustness"));
  if (!j.at("mean_s").is_null()) t.mean_s = j.at("mean_s").get<double>();
  if (!j.at("duration_s").is_null()) t.duration_s = summary_from(j.at("duration_s"));
  return t;
}

json to_json(const TransferResult& t) {
  json groups = json::array();
  for (const auto& [group, stats] : t.per_group) {
    groups.push_back({{"group", group.label}, {"stats", to_json(stats)}});
  }
  return {{"overall", to_json(t.overall)}, {"per_group", groups}};
}

TransferResult transfer_from(const json& j) {
  TransferResult t;
  t.overall = transfer_stats_from(j.at("overall"));
  for (const json& e : j.at("per_group")) {
    t.per_group.push_back({ParticipantGroup::from_label(e.at("group").get<std::string>()),
                           transfer_stats_from(e.at("stats"))});
  }
  return t;
}

json to_json(const EnergyResult& e) {
  return {{"e_grasp_j", to_json(e.e_grasp_j)},
          {"e_hold_j", to_json(e.e_hold_j)},
          {"e_release_j", to_json(e.e_release_j)},
          {"e_cycle_j", to_json(e.e_cycle_j)},
          {"p_hold_mean_w", e.p_hold_mean_w},
          {"e_hold10_j", e.e_hold10_j},
          {"energy_to_weight_grasp_j_per_g",
           opt_json(e.energy_to_weight_grasp_j_per_g, [](double v) { return json(v); })},
          {"energy_to_weight_cycle_j_per_g",
           opt_json(e.energy_to_weight_cycle_j_per_g, [](double v) { return json(v); })},
          {"t_hold_nominal_s", e.t_hold_nominal_s}};
}

EnergyResult energy_from(const json& j) {
  EnergyResult e;
  e.e_grasp_j = summary_from(j.at("e_grasp_j"));
  e.e_hold_j = summary_from(j.at("e_hold_j"));
  e.e_release_j = summary_from(j.at("e_release_j"));
  e.e_cycle_j = summary_from(j.at("e_cycle_j"));
  e.p_hold_mean_w = j.at("p_hold_mean_w").get<double>();
  e.e_hold10_j = j.at("e_hold10_j").get<double>();
  if (!j.at("energy_to_weight_grasp_j_per_g").is_null()) {
    e.energy_to_weight_grasp_j_per_g = j.at("energy_to_weight_grasp_j_per_g").get<double>();
  }
  if (!j.at("energy_to_weight_cycle_j_per_g").is_null()) {
    e.energy_to_weight_cycle_j_per_g = j.at("energy_to_weight_cycle_j_per_g").get<double>();
  }
  e.t_hold_nominal_s = j.at("t_hold_nominal_s").get<double>();
  return e;
}

json to_json(const IipbResult& i) {
  json arr = json::array();
  for (const IipbArtifact& a : i.per_artifact) {
    arr.push_back({{"dimension_mm", a.dimension_mm}, {"f_ideal_n", to_json(a.f_ideal_n)}});
  }
  return {{"profile_code", i.profile_code}, {"per_artifact", arr}};
}

IipbResult iipb_from(const json& j) {
  IipbResult i;
  i.profile_code = j.at("profile_code").get<std::string>();
  for (const json& e : j.at("per_artifact")) {
    i.per_artifact.push_back(
        {e.at("dimension_mm").get<double>(), summary_from(e.at("f_ideal_n"))});
  }
  return i;
}

json to_json(const AnalyzeOptions& o) {
  return {{"seed", o.seed},
          {"bootstrap_resamples", o.bootstrap_resamples},
          {"confidence", o.confidence},
          {"slip",
           {{"drop_fraction", o.slip.drop_fraction},
            {"sustain_window_s", o.slip.sustain_window_s},
            {"smoothing_window_s", o.slip.smoothing_window_s}}},
          {"plateau_window_s", o.plateau_window_s},
          {"smoothing_window_s", o.smoothing_window_s},
          {"rules",
           {{"lift_within_s", o.rules.lift_within_s},
            {"hold_min_s", o.rules.hold_min_s},
            {"event_deadline_s", o.rules.event_deadline_s}}}};
}

AnalyzeOptions options_from(const json& j) {
  AnalyzeOptions o;
  o.seed = j.at("seed").get<std::uint64_t>();
  o.bootstrap_resamples = j.at("bootstrap_resamples").get<std::size_t>();
  o.confidence = j.at("confidence").get<double>();
  o.slip.drop_fraction = j.at("slip").at("drop_fraction").get<double>();
  o.slip.sustain_window_s = j.at("slip").at("sustain_window_s").get<double>();
  o.slip.smoothing_window_s = j.at("slip").at("smoothing_window_s").get<double>();
  o.plateau_window_s = j.at("plateau_window_s").get<double>();
  o.smoothing_window_s = j.at("smoothing_window_s").get<double>();
  o.rules.lift_within_s = j.at("rules").at("lift_within_s").get<double>();
  o.rules.hold_min_s = j.at("rules").at("hold_min_s").get<double>();
  o.rules.event_deadline_s = j.at("rules").at("event_deadline_s").get<double>();
  return o;
}

} // namespace

std::string report_to_json(const Report& report) {
  json j;
  j["schema_version"] = report.meta.report_schema;
  j["meta"] = {{"tool_version", report.meta.tool_version},
               {"gripper_name", report.meta.gripper_name},
               {"platform_name", report.meta.platform_name},
               {"notes", opt_json(report.meta.notes, [](const std::string& s) { return json(s); })},
               {"options", to_json(report.meta.options)}};
  json violations = json::array();
  for (const Violation& v : report.violations) {
    violations.push_back({{"record", v.record}, {"invariant", v.invariant}});
  }
  j["violations"] = violations;
  j["ycb"] = opt_json(report.ycb, [](const YcbResult& y) { return to_json(y); });
  j["nist"] = opt_json(report.nist, [](const NistResult& n) { return to_json(n); });
  j["transfer"] = opt_json(report.transfer, [](const TransferResult& t) { return to_json(t); });
  j["energy"] = opt_json(report.energy, [](const EnergyResult& e) { return to_json(e); });
  j["iipb"] = opt_json(report.iipb, [](const IipbResult& i) { return to_json(i); });
  return j.dump(2) + "\n";
}

Report report_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    raise(errc::parse_error, std::string("report JSON: ") + e.what());
  }

  Report r;
  try {
    r.meta.report_schema = j.at("schema_version").get<std::string>();
    if (r.meta.report_schema != kReportSchemaVersion) {
      raise(errc::schema_version_unsupported,
            "report schema '" + r.meta.report_schema + "' (supported: '" +
                std::string(kReportSchemaVersion) + "')");
    }
    const json& meta = j.at("meta");
    r.meta.tool_version = meta.at("tool_version").get<std::string>();
    r.meta.gripper_name = meta.at("gripper_name").get<std::string>();
    r.meta.platform_name = meta.at("platform_name").get<std::string>();
    if (!meta.at("notes").is_null()) r.meta.notes = meta.at("notes").get<std::string>();
    r.meta.options = options_from(meta.at("options"));
    for (const json& e : j.at("violations")) {
      r.violations.push_back(
          {e.at("record").get<std::string>(), e.at("invariant").get<std::string>()});
    }
    if (!j.at("ycb").is_null()) r.ycb = ycb_from(j.at("ycb"));
    if (!j.at("nist").is_null()) r.nist = nist_from(j.at("nist"));
    if (!j.at("transfer").is_null()) r.transfer = transfer_from(j.at("transfer"));
    if (!j.at("energy").is_null()) r.energy = energy_from(j.at("energy"));
    if (!j.at("iipb").is_null()) r.iipb = iipb_from(j.at("iipb"));
  } catch (const json::exception& e) {
    raise(errc::parse_error, std::string("report JSON: ") + e.what());
  }
  return r;
}

// --- Markdown -----------------------------------------------------------

namespace {

std::string fmt_num(double v) {
  char buf[64];
  if (v == 0.0 || std::fabs(v) >= 0.095) {
    std::snprintf(buf, sizeof buf, "%.2f", v);
  } else {
    std::snprintf(buf, sizeof buf, "%.3g", v);
  }
  return buf;
}

std::string fmt_ci(const Interval& v) {
  return "[" + fmt_num(v.lo) + ", " + fmt_num(v.hi) + "]";
}

std::string fmt_summary(const SummaryStat& s) { return fmt_num(s.median) + " " + fmt_ci(s.ci95); }

std::string dim_label(double dim_mm) { return format_double(dim_mm) + " mm"; }

std::string grasp_type_word(const Report& r) {
  // The session manifest is not embedded in a report; the grasp type is
  // visible through the IIPB profile code when the family was measured.
  if (!r.iipb) return "-";
  const std::string& code = r.iipb->profile_code; // e.g. "2S-P-B"
  const std::size_t first = code.find('-');
  if (first == std::string::npos || first + 1 >= code.size()) return "-";
  return code[first + 1] == 'W' ? "wrap" : "pinch";
}

void meta_section(std::string& md, const Report& r) {
  const AnalyzeOptions& o = r.meta.options;
  md += "# CEGB report: " + r.meta.gripper_name + " on " + r.meta.platform_name + "\n\n";
  md += "Tool " + r.meta.tool_version + ", report schema " + r.meta.report_schema + ".";
  if (r.meta.notes) md += " " + *r.meta.notes + ".";
  md += "\n\n";
  md += "| Setting | Value |\n| --- | --- |\n";
  md += "| seed | " + std::to_string(o.seed) + " |\n";
  md += "| bootstrap resamples | " + std::to_string(o.bootstrap_resamples) + " |\n";
  md += "| confidence | " + format_double(o.confidence) + " |\n";
  md += "| slip drop fraction | " + format_double(o.slip.drop_fraction) + " |\n";
  md += "| slip sustain window [s] | " + format_double(o.slip.sustain_window_s) + " |\n";
  md += "| smoothing window [s] | " + format_double(o.smoothing_window_s) + " |\n";
  md += "| plateau window [s] | " + format_double(o.plateau_window_s) + " |\n";
  md += "| lift limit [s] | " + format_double(o.rules.lift_within_s) + " |\n";
  md += "| minimum hold [s] | " + format_double(o.rules.hold_min_s) + " |\n";
  md += "| event deadline [s] | " + format_double(o.rules.event_deadline_s) + " |\n";
}

} // namespace

std::string report_to_markdown(const Report& report) {
  std::string md;
  meta_section(md, report);

  if (!report.violations.empty()) {
    md += "\n## Validation failures\n\n| Record | Invariant |\n| --- | --- |\n";
    for (const Violation& v : report.violations) {
      md += "| " + v.record + " | " + v.invariant + " |\n";
    }
    return md;
  }

  const std::string grasp_word = grasp_type_word(report);

  md += "\n## Pick-and-place success\n\n";
  if (report.ycb) {
    const YcbResult& y = *report.ycb;
    md += "| Object | Poses | Success rate |\n| --- | --- | --- |\n";
    for (const ObjectStat& o : y.per_object) {
      md += "| " + o.object_id + " | " + std::to_string(o.poses) + " | " +
            fmt_num(o.success_rate) + " |\n";
    }
    md += "\n- micro average: " + fmt_num(y.micro.point) + ", 95% CI " + fmt_ci(y.micro.wilson) +
          " (" + std::to_string(y.micro.successes) + "/" + std::to_string(y.micro.trials) +
          ")\n";
    md += "- macro average: " + fmt_num(y.macro) + ", 95% CI " + fmt_ci(y.macro_ci) + "\n";
    if (y.time_to_lift_s) {
      md += "- time to lift [s]: " + fmt_summary(*y.time_to_lift_s) + "\n";
    }
    if (y.time_to_release_s) {
      md += "- time to release [s]: " + fmt_summary(*y.time_to_release_s) + "\n";
    }
  } else {
    md += "not measured\n";
  }

  md += "\n## Grasp cycle time\n\n";
  if (report.nist && !report.nist->cycle.empty()) {
    md += "| Artifact | Grasp type | Median [s] | IQR [s] | 95% CI |\n";
    md += "| --- | --- | --- | --- | --- |\n";
    for (const CycleSummary& c : report.nist->cycle) {
      md += "| " + dim_label(c.dimension_mm) + " | " + grasp_word + " | " +
            fmt_num(c.t_cycle_s.median) + " | " + fmt_num(c.t_cycle_s.iqr()) + " | " +
            fmt_ci(c.t_cycle_s.ci95) + " |\n";
    }
  } else {
    md += "not measured\n";
  }

  md += "\n## Grasp strength\n\n";
  if (report.nist && !report.nist->strength.empty()) {
    md += "| Artifact | Grasp type | Peak [N] | Plateau [N] | 95% CI (plateau) |\n";
    md += "| --- | --- | --- | --- | --- |\n";
    for (const StrengthSummary& s : report.nist->strength) {
      md += "| " + dim_label(s.dimension_mm) + " | " + grasp_word + " | " +
            fmt_num(s.peak_n.median) + " | " + fmt_num(s.plateau_n.median) + " | " +
            fmt_ci(s.plateau_n.ci95) + " |\n";
    }
  } else {
    md += "not measured\n";
  }

  md += "\n## Slip resistance\n\n";
  if (report.nist && !report.nist->slip.empty()) {
    md += "| Artifact | F_slip [N] | 95% CI | mu_eff | Q_hold |\n";
    md += "| --- | --- | --- | --- | --- |\n";
    for (const SlipSummary& s : report.nist->slip) {
      md += "| " + dim_label(s.dimension_mm) + " | " + fmt_num(s.f_slip_n.median) + " | " +
            fmt_ci(s.f_slip_n.ci95) + " | " +
            (s.mu_eff ? fmt_num(s.mu_eff->median) : std::string("not measured")) + " | " +
            (s.q_hold ? fmt_num(s.q_hold->median) : std::string("not measured")) + " |\n";
    }
  } else {
    md += "not measured\n";
  }

  md += "\n## Transfer time\n\n";
  if (report.transfer) {
    const TransferResult& t = *report.transfer;
    md += "| Group | Cycles | Robustness | Mean [s] | Median [s] | 95% CI |\n";
    md += "| --- | --- | --- | --- | --- | --- |\n";
    auto row = [&md](const std::string& name, const TransferStats& s) {
      md += "| " + name + " | " + std::to_string(s.cycles) + " | " + fmt_num(s.robustness.point) +
            " " + fmt_ci(s.robustness.wilson) + " | " +
            (s.mean_s ? fmt_num(*s.mean_s) : std::string("-")) + " | " +
            (s.duration_s ? fmt_num(s.duration_s->median) : std::string("-")) + " | " +
            (s.duration_s ? fmt_ci(s.duration_s->ci95) : std::string("-")) + " |\n";
    };
    for (const auto& [group, stats] : t.per_group) row(group.label, stats);
    row("overall", t.overall);
  } else {
    md += "not measured\n";
  }

  md += "\n## Energy per grasp cycle\n\n";
  if (report.energy) {
    const EnergyResult& e = *report.energy;
    md += "| Phase | Median [J] | IQR [J] | 95% CI |\n| --- | --- | --- | --- |\n";
    auto row = [&md](const char* name, const SummaryStat& s) {
      md += std::string("| ") + name + " | " + fmt_num(s.median) + " | " + fmt_num(s.iqr()) +
            " | " + fmt_ci(s.ci95) + " |\n";
    };
    row("grasp", e.e_grasp_j);
    row("hold", e.e_hold_j);
    row("release", e.e_release_j);
    row("full cycle", e.e_cycle_j);
    md += "\n- mean holding power: " + fmt_num(e.p_hold_mean_w) + " W\n";
    md += "- standardized " + format_double(e.t_hold_nominal_s) +
          " s holding energy: " + fmt_num(e.e_hold10_j) + " J\n";
    if (e.energy_to_weight_grasp_j_per_g) {
      md += "- energy to weight (grasp): " + fmt_num(*e.energy_to_weight_grasp_j_per_g) +
            " J/g\n";
    }
    if (e.energy_to_weight_cycle_j_per_g) {
      md += "- energy to weight (full cycle): " + fmt_num(*e.energy_to_weight_cycle_j_per_g) +
            " J/g\n";
    }
  } else {
    md += "not measured\n";
  }

  md += "\n## Ideal payload\n\n";
  if (report.iipb) {
    const IipbResult& i = *report.iipb;
    md += "Profile code: " + i.profile_code + "\n\n";
    md += "| Artifact | F_ideal [N] | IQR [N] | 95% CI |\n| --- | --- | --- | --- |\n";
    for (const IipbArtifact& a : i.per_artifact) {
      md += "| " + dim_label(a.dimension_mm) + " | " + fmt_num(a.f_ideal_n.median) + " | " +
            fmt_num(a.f_ideal_n.iqr()) + " | " + fmt_ci(a.f_ideal_n.ci95) + " |\n";
    }
  } else {
    md += "not measured\n";
  }

  return md;
}

namespace {

// One comparison table: fixed row keys, one value column per report.
void comparison_table(std::string& md, const std::string& heading,
                      const std::vector<std::string>& row_keys,
                      const std::vector<std::string>& columns,
                      const std::vector<std::vector<std::string>>& cells,
                      const std::string& key_header) {
  md += "\n## " + heading + "\n\n";
  md += "| " + key_header + " |";
  for (const std::string& c : columns) md += " " + c + " |";
  md += "\n| --- |";
  for (std::size_t i = 0; i < columns.size(); ++i) md += " --- |";
  md += "\n";
  for (std::size_t row = 0; row < row_keys.size(); ++row) {
    md += "| " + row_keys[row] + " |";
    for (std::size_t col = 0; col < columns.size(); ++col) {
      md += " " + cells[row][col] + " |";
    }
    md += "\n";
  }
}

} // namespace

std::string comparison_markdown(std::span<const Report> reports) {
  if (reports.size() < 2) {
    throw std::invalid_argument("comparison needs at least two reports");
  }
  for (const Report& r : reports) {
    if (r.meta.report_schema != reports.front().meta.report_schema) {
      raise(errc::schema_mismatch,
            "reports use different schema versions ('" + reports.front().meta.report_schema +
                "' vs '" + r.meta.report_schema + "')");
    }
  }

  std::vector<std::string> columns;
  for (const Report& r : reports) {
    columns.push_back(r.meta.gripper_name + " @ " + r.meta.platform_name);
  }
  const std::string na = "not measured";

  std::string md = "# CEGB comparison\n";

  {
    std::vector<std::string> rows = {"micro average", "macro average"};
    std::vector<std::vector<std::string>> cells(rows.size(),
                                                std::vector<std::string>(reports.size(), na));
    for (std::size_t c = 0; c < reports.size(); ++c) {
      if (!reports[c].ycb) continue;
      const YcbResult& y = *reports[c].ycb;
      cells[0][c] = fmt_num(y.micro.point) + " " + fmt_ci(y.micro.wilson);
      cells[1][c] = fmt_num(y.macro) + " " + fmt_ci(y.macro_ci);
    }
    comparison_table(md, "Pick-and-place success", rows, columns, cells, "Metric");
  }

  // Dimension-keyed families: rows are the union of dimensions in first-seen
  // order across reports.
  const auto dim_rows = [&](auto&& extract) {
    std::vector<double> dims;
    for (const Report& r : reports) {
      for (double d : extract(r)) {
        if (std::find(dims.begin(), dims.end(), d) == dims.end()) dims.push_back(d);
      }
    }
    return dims;
  };

  {
    const std::vector<double> dims = dim_rows([](const Report& r) {
      std::vector<double> d;
      if (r.nist) {
        for (const CycleSummary& c : r.nist->cycle) d.push_back(c.dimension_mm);
      }
      return d;
    });
    std::vector<std::string> rows;
    for (double d : dims) rows.push_back(dim_label(d));
    std::vector<std::vector<std::string>> cells(rows.size(),
                                                std::vector<std::string>(reports.size(), na));
    for (std::size_t c = 0; c < reports.size(); ++c) {
      if (!reports[c].nist) continue;
      for (const CycleSummary& s : reports[c].nist->cycle) {
        const auto it = std::find(dims.begin(), dims.end(), s.dimension_mm);
        cells[static_cast<std::size_t>(it - dims.begin())][c] = fmt_summary(s.t_cycle_s);
      }
    }
    comparison_table(md, "Grasp cycle time [s]", rows, columns, cells, "Artifact");
  }

  {
    const std::vector<double> dims = dim_rows([](const Report& r) {
      std::vector<double> d;
      if (r.nist) {
        for (const StrengthSummary& s : r.nist->strength) d.push_back(s.dimension_mm);
      }
      return d;
    });
    std::vector<std::string> rows;
    for (double d : dims) rows.push_back(dim_label(d));
    std::vector<std::vector<std::string>> cells(rows.size(),
                                                std::vector<std::string>(reports.size(), na));
    for (std::size_t c = 0; c < reports.size(); ++c) {
      if (!reports[c].nist) continue;
      for (const StrengthSummary& s : reports[c].nist->strength) {
        const auto it = std::find(dims.begin(), dims.end(), s.dimension_mm);
        cells[static_cast<std::size_t>(it - dims.begin())][c] = fmt_summary(s.plateau_n);
      }
    }
    comparison_table(md, "Grasp strength, plateau [N]", rows, columns, cells, "Artifact");
  }

  {
    const std::vector<double> dims = dim_rows([](const Report& r) {
      std::vector<double> d;
      if (r.nist) {
        for (const SlipSummary& s : r.nist->slip) d.push_back(s.dimension_mm);
      }
      return d;
    });
    std::vector<std::string> rows;
    for (double d : dims) rows.push_back(dim_label(d));
    std::vector<std::vector<std::string>> cells(rows.size(),
                                                std::vector<std::string>(reports.size(), na));
    for (std::size_t c = 0; c < reports.size(); ++c) {
      if (!reports[c].nist) continue;
      for (const SlipSummary& s : reports[c].nist->slip) {
        const auto it = std::find(dims.begin(), dims.end(), s.dimension_mm);
        cells[static_cast<std::size_t>(it - dims.begin())][c] = fmt_summary(s.f_slip_n);
      }
    }
    comparison_table(md, "Slip resistance [N]", rows, columns, cells, "Artifact");
  }

  {
    std::vector<std::string> rows = {"overall robustness", "overall mean [s]"};
    std::vector<std::string> group_rows;
    for (const Report& r : reports) {
      if (!r.transfer) continue;
      for (const auto& [group, stats] : r.transfer->per_group) {
        (void)stats;
        if (std::find(group_rows.begin(), group_rows.end(), group.label) == group_rows.end()) {
          group_rows.push_back(group.label);
        }
      }
    }
    for (const std::string& g : group_rows) rows.push_back(g + " mean [s]");
    std::vector<std::vector<std::string>> cells(rows.size(),
                                                std::vector<std::string>(reports.size(), na));
    for (std::size_t c = 0; c < reports.size(); ++c) {
      if (!reports[c].transfer) continue;
      const TransferResult& t = *reports[c].transfer;
      cells[0][c] = fmt_num(t.overall.robustness.point) + " " + fmt_ci(t.overall.robustness.wilson);
      if (t.overall.mean_s) cells[1][c] = fmt_num(*t.overall.mean_s);
      for (const auto& [group, stats] : t.per_group) {
        const auto it = std::find(group_rows.begin(), group_rows.end(), group.label);
        const std::size_t row = 2 + static_cast<std::size_t>(it - group_rows.begin());
        if (stats.mean_s) cells[row][c] = fmt_num(*stats.mean_s);
      }
    }
    comparison_table(md, "Transfer time", rows, columns, cells, "Metric");
  }

  {
    std::vector<std::string> rows = {"grasp [J]",      "hold [J]",   "release [J]",
                                     "full cycle [J]", "E_hold10 [J]"};
    std::vector<std::vector<std::string>> cells(rows.size(),
                                                std::vector<std::string>(reports.size(), na));
    for (std::size_t c = 0; c < reports.size(); ++c) {
      if (!reports[c].energy) continue;
      const EnergyResult& e = *reports[c].energy;
      cells[0][c] = fmt_summary(e.e_grasp_j);
      cells[1][c] = fmt_summary(e.e_hold_j);
      cells[2][c] = fmt_summary(e.e_release_j);
      cells[3][c] = fmt_summary(e.e_cycle_j);
      cells[4][c] = fmt_num(e.e_hold10_j);
    }
    comparison_table(md, "Energy per grasp cycle", rows, columns, cells, "Phase");
  }

  {
    std::vector<std::string> rows = {"profile code"};
    std::vector<double> dims = dim_rows([](const Report& r) {
      std::vector<double> d;
      if (r.iipb) {
        for (const IipbArtifact& a : r.iipb->per_artifact) d.push_back(a.dimension_mm);
      }
      return d;
    });
    for (double d : dims) rows.push_back(dim_label(d) + " F_ideal [N]");
    std::vector<std::vector<std::string>> cells(rows.size(),
                                                std::vector<std::string>(reports.size(), na));
    for (std::size_t c = 0; c < reports.size(); ++c) {
      if (!reports[c].iipb) continue;
      const IipbResult& i = *reports[c].iipb;
      cells[0][c] = i.profile_code;
      for (const IipbArtifact& a : i.per_artifact) {
        const auto it = std::find(dims.begin(), dims.end(), a.dimension_mm);
        const std::size_t row = 1 + static_cast<std::size_t>(it - dims.begin());
        cells[row][c] = fmt_summary(a.f_ideal_n);
      }
    }
    comparison_table(md, "Ideal payload", rows, columns, cells, "Metric");
  }

  return md;
}

} // namespace cegb
