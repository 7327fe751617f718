#include "cegb/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "cegb/error.hpp"
#include "cegb/ingest.hpp"
#include "cegb/stats.hpp"

namespace cegb {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Symmetric paired offsets [+d1, -d1, +d2, -d2, ...], padded with an exact
// zero for odd counts. A sample built as target + offset keeps both its
// median and its mean on target up to rounding.
std::vector<double> paired_offsets(int n, double spread) {
  std::vector<double> out;
  const int pairs = n / 2;
  for (int k = 1; k <= pairs; ++k) {
    const double d = spread * k / pairs;
    out.push_back(d);
    out.push_back(-d);
  }
  if (n % 2 == 1) out.push_back(0.0);
  return out;
}

std::string two_digit(int k) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02d", k);
  return buf;
}

// Boundary between piecewise-constant segments: the left segment keeps its
// exact end timestamp and the right one starts 1 us later, so a trapezoid
// over either phase window sees only that phase's power (plus a 1 us
// sliver, ~1e-7 relative).
constexpr double kStepEps = 1e-6;

void append_power_segment(SampledTrace& tr, double b, double e, double power, double rate) {
  tr.samples.push_back({tr.samples.empty() ? b : b + kStepEps, power, 0});
  for (int j = 1;; ++j) {
    const double t = b + j / rate;
    if (!(t < e - 1e-9)) break;
    tr.samples.push_back({t, power, 0});
  }
  tr.samples.push_back({e, power, 0});
}

struct PowerShape {
  double idle_prefix_s = 0;
  double grasp_s = 2, hold_s = 10, release_s = 2;
  double p_grasp_w = 0, p_hold_w = 0, p_release_w = 0;
  double rate_hz = 100;
};

SampledTrace make_power_trace(const PowerShape& s, std::vector<PhaseMark>& marks) {
  SampledTrace tr;
  tr.kind = TraceKind::Power;
  double t0 = 0;
  if (s.idle_prefix_s > 0) {
    append_power_segment(tr, 0, s.idle_prefix_s, 0.0, s.rate_hz);
    t0 = s.idle_prefix_s;
  }
  const double t1 = t0 + s.grasp_s;
  const double t2 = t1 + s.hold_s;
  const double t3 = t2 + s.release_s;
  append_power_segment(tr, t0, t1, s.p_grasp_w, s.rate_hz);
  append_power_segment(tr, t1, t2, s.p_hold_w, s.rate_hz);
  append_power_segment(tr, t2, t3, s.p_release_w, s.rate_hz);
  marks = {{Phase::Grasp, t0, t1}, {Phase::Hold, t1, t2}, {Phase::Release, t2, t3}};
  return tr;
}

struct LoadShape {
  double f_n = 6.28;
  double ramp_rate = 4.0;
  double post_drop_level = 0.3; // >= 0.999 keeps the force up (safety stop)
  double rate_hz = 500;
  bool transient_dip = false;
};

// Ramp to f_n, 0.4 s plateau, then either a sustained 0.6 s drop or (safety
// branch) a level tail. The plateau is wide enough that the smoothed
// maximum equals f_n, so detectors recover the target without bias.
SampledTrace make_load_trace(const LoadShape& s, TraceKind kind) {
  const double ramp = s.f_n / s.ramp_rate;
  const double plateau_s = 0.4;
  const double drop_s = 0.02;
  const double tail_s = 0.6;
  const bool safety = s.post_drop_level >= 0.999;
  const double p1 = ramp + plateau_s;
  const double total = safety ? p1 + tail_s : p1 + drop_s + tail_s;
  const double dip0 = ramp + 0.15;
  const double dip1 = dip0 + 0.06;
  const double low = s.post_drop_level * s.f_n;

  SampledTrace tr;
  tr.kind = kind;
  const long n = std::lround(std::ceil(total * s.rate_hz));
  tr.samples.reserve(static_cast<std::size_t>(n) + 1);
  for (long i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) / s.rate_hz;
    double v;
    if (t < ramp) {
      v = s.ramp_rate * t;
    } else if (safety || t <= p1) {
      v = s.f_n;
      if (s.transient_dip && t >= dip0 && t < dip1) v = 0.75 * s.f_n;
    } else if (t < p1 + drop_s) {
      v = s.f_n + (low - s.f_n) * (t - p1) / drop_s;
    } else {
      v = low;
    }
    tr.samples.push_back({t, v, 0});
  }
  return tr;
}

// Ramp for 1 s to 1.2x the plateau level, 0.2 s of overshoot, a 0.1 s ease
// down, then a 1.5 s plateau; one trace per finger on a shared grid.
SampledTrace make_strength_trace(double finger_plateau_n, double rate_hz) {
  const double peak = 1.2 * finger_plateau_n;
  const double total = 2.8;
  SampledTrace tr;
  tr.kind = TraceKind::Force;
  const long n = std::lround(std::ceil(total * rate_hz));
  tr.samples.reserve(static_cast<std::size_t>(n) + 1);
  for (long i = 0; i <= n; ++i) {
    const double t = static_cast<double>(i) / rate_hz;
    double v;
    if (t < 1.0) {
      v = peak * t;
    } else if (t <= 1.2) {
      v = peak;
    } else if (t < 1.3) {
      v = peak + (finger_plateau_n - peak) * (t - 1.2) / 0.1;
    } else {
      v = finger_plateau_n;
    }
    tr.samples.push_back({t, v, 0});
  }
  return tr;
}

void add_artifact(Session& s, const std::string& id, ArtifactShape shape, double dim_mm,
                  double mass_g) {
  ArtifactSpec a;
  a.id = id;
  a.shape = shape;
  a.dimension_mm = dim_mm;
  a.mass_g = mass_g;
  s.artifacts[id] = a;
}

void bind_trace(Session& s, const std::string& id, SampledTrace trace, TraceRole role,
                std::optional<std::string> artifact, std::optional<int> trial,
                std::optional<int> finger = std::nullopt,
                std::optional<double> mass_g = std::nullopt) {
  TraceBinding b;
  b.trace_id = id;
  b.file = "traces/" + id + ".csv";
  b.role = role;
  b.artifact_id = std::move(artifact);
  b.trial = trial;
  b.finger = finger;
  b.object_mass_g = mass_g;
  s.manifest.trace_index.push_back(b);
  s.traces[id] = std::move(trace);
}

void add_noise(SampledTrace& tr, double sd, SeededRng& rng) {
  if (sd <= 0) return;
  for (TraceSample& s : tr.samples) s.v0 += sd * rng.next_normal();
}

void to_voltage_current(SampledTrace& tr, double bus_v) {
  tr.kind = TraceKind::VoltageCurrent;
  for (TraceSample& s : tr.samples) {
    const double p = s.v0;
    s.v0 = bus_v;
    s.v1 = p / bus_v;
  }
}

// Shared campaign pieces, used by the single-family generators, gen_mixed
// and the replica fixture.

void append_cycle_trials(Session& s, GroundTruth& gt, const std::string& artifact_id,
                         double dim_mm, double target_s, int trials, double spread_s,
                         double& cursor_s) {
  const std::vector<double> offs = paired_offsets(trials, spread_s);
  for (int k = 0; k < trials; ++k) {
    const double d = target_s + offs[static_cast<std::size_t>(k)];
    s.manifest.cycle_trials.push_back({artifact_id, cursor_s, cursor_s + d});
    cursor_s += d + 2.0;
  }
  gt.cycle_time_s.push_back({dim_mm, target_s});
}

void append_strength_trials(Session& s, GroundTruth& gt, const std::string& artifact_id,
                            double dim_mm, double total_plateau_n, int trials, double spread_n,
                            double rate_hz) {
  const std::vector<double> offs = paired_offsets(trials, spread_n);
  for (int k = 1; k <= trials; ++k) {
    const double total = total_plateau_n + offs[static_cast<std::size_t>(k - 1)];
    for (int finger = 1; finger <= 2; ++finger) {
      const std::string id =
          "strength-" + format_double(dim_mm) + "-t" + two_digit(k) + "-f" + std::to_string(finger);
      bind_trace(s, id, make_strength_trace(total / 2.0, rate_hz), TraceRole::Strength,
                 artifact_id, k, finger);
    }
  }
  gt.strength_plateau_n.push_back({dim_mm, total_plateau_n});
}

void append_load_trials(Session& s, GroundTruth& gt, const std::string& artifact_id,
                        double dim_mm, double target_n, int trials, double spread_n,
                        const LoadShape& shape, TraceRole role, double noise_sd,
                        SeededRng& rng) {
  const std::vector<double> offs = paired_offsets(trials, spread_n);
  const char* prefix = role == TraceRole::Pull ? "pull-" : "slip-";
  const TraceKind kind = role == TraceRole::Pull ? TraceKind::Pull : TraceKind::Tangential;
  for (int k = 1; k <= trials; ++k) {
    LoadShape one = shape;
    one.f_n = target_n + offs[static_cast<std::size_t>(k - 1)];
    SampledTrace tr = make_load_trace(one, kind);
    add_noise(tr, noise_sd, rng);
    const std::string id = prefix + format_double(dim_mm) + "-t" + two_digit(k);
    bind_trace(s, id, std::move(tr), role, artifact_id, k);
  }
  auto& table = role == TraceRole::Pull ? gt.ideal_payload_n : gt.slip_force_n;
  table.push_back({dim_mm, target_n});
}

void append_energy_trials(Session& s, GroundTruth& gt, const std::string& artifact_id,
                          const EnergyGenConfig& cfg, std::span<const double> trial_scales,
                          SeededRng& rng) {
  for (int k = 1; k <= cfg.trials; ++k) {
    const double scale =
        trial_scales.empty() ? 1.0 : trial_scales[static_cast<std::size_t>(k - 1)];
    PowerShape shape;
    shape.idle_prefix_s = cfg.idle_prefix_s;
    shape.grasp_s = cfg.grasp_s;
    shape.hold_s = cfg.hold_s;
    shape.release_s = cfg.release_s;
    shape.p_grasp_w = cfg.p_grasp_w * scale;
    shape.p_hold_w = cfg.p_hold_w * scale;
    shape.p_release_w = cfg.p_release_w * scale;
    shape.rate_hz = cfg.rate_hz;

    std::vector<PhaseMark> marks;
    SampledTrace tr = make_power_trace(shape, marks);
    add_noise(tr, cfg.noise_sd_w, rng);
    if (cfg.as_voltage_current) to_voltage_current(tr, 24.0);
    if (cfg.with_marks) tr.phase_marks = marks;

    const std::string id = "energy-t" + two_digit(k);
    bind_trace(s, id, std::move(tr), TraceRole::Energy, artifact_id, k, std::nullopt,
               cfg.mass_g > 0 ? std::optional<double>(cfg.mass_g) : std::nullopt);
  }
  GroundTruth::Energy e;
  e.e_grasp_j = cfg.p_grasp_w * cfg.grasp_s;
  e.e_hold_j = cfg.p_hold_w * cfg.hold_s;
  e.e_release_j = cfg.p_release_w * cfg.release_s;
  e.e_cycle_j = e.e_grasp_j + e.e_hold_j + e.e_release_j;
  e.p_hold_w = cfg.p_hold_w;
  e.mass_g = cfg.mass_g;
  gt.energy = e;
}

struct TransferTarget {
  std::string label;
  double mean_s;
  int cycles;
  double spread_s;
};

void append_transfer_groups(Session& s, GroundTruth& gt,
                            std::span<const TransferTarget> groups) {
  int total = 0;
  for (const TransferTarget& g : groups) {
    const std::vector<double> offs = paired_offsets(g.cycles, g.spread_s);
    for (int k = 1; k <= g.cycles; ++k) {
      TransferCycle c;
      c.participant_id = g.label + "-p" + two_digit(k);
      c.group = ParticipantGroup::from_label(g.label);
      c.duration_s = g.mean_s + offs[static_cast<std::size_t>(k - 1)];
      s.transfer_cycles.push_back(c);
      ++total;
    }
    gt.transfer_groups.push_back({g.label, g.mean_s, g.cycles});
  }
  std::sort(gt.transfer_groups.begin(), gt.transfer_groups.end(),
            [](const auto& a, const auto& b) { return a.group < b.group; });
  if (total > 0) gt.transfer_success_rate = 1.0;
}

Session base_session(const std::string& gripper, const std::string& platform) {
  Session s;
  s.manifest.gripper_name = gripper;
  s.manifest.platform_name = platform;
  return s;
}

} // namespace

SynthBundle gen_ycb(const YcbGenConfig& cfg) {
  if (cfg.p_table.empty() || cfg.attempts < 1) {
    throw std::invalid_argument("gen_ycb: need at least one object and one attempt");
  }
  for (const auto& [object_id, ps] : cfg.p_table) {
    if (ps.empty()) throw std::invalid_argument("gen_ycb: object without poses");
    for (double p : ps) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("gen_ycb: probability outside [0, 1]");
      }
    }
  }

  SynthBundle out;
  out.session = base_session("synthetic-gripper", "synthetic-rig");
  SeededRng rng(mix_seed(cfg.seed, "ycb"));

  std::uint64_t total_good = 0;
  std::uint64_t total_attempts = 0;
  double macro_sum = 0;
  double t0 = 0;

  for (const auto& [object_id, pose_ps] : cfg.p_table) {
    double rate_sum = 0;
    for (std::size_t j = 0; j < pose_ps.size(); ++j) {
      std::uint64_t good = 0;
      for (int i = 1; i <= cfg.attempts; ++i) {
        const bool success = rng.next_unit() < pose_ps[j];
        GraspAttempt a;
        a.object_id = object_id;
        a.pose_index = static_cast<int>(j) + 1;
        a.attempt_index = i;
        a.events.t_grasp_cmd_s = t0;
        AttemptEvents& e = a.events;
        if (success) {
          ++good;
          e.t_lift_5cm_s = t0 + 0.8 + 1.6 * rng.next_unit();
          e.hold_duration_s = 3.0 + rng.next_unit();
          e.t_release_done_s = *e.t_lift_5cm_s + *e.hold_duration_s + 0.2 + 0.3 * rng.next_unit();
        } else {
          switch (rng.next_index(5)) {
            case 0: // nothing observed at all
              break;
            case 1: // lifted, but too late
              e.t_lift_5cm_s = t0 + 3.05 + 0.9 * rng.next_unit();
              e.hold_duration_s = 3.2 + 0.6 * rng.next_unit();
              e.t_release_done_s = *e.t_lift_5cm_s + *e.hold_duration_s + 0.3;
              break;
            case 2: // dropped before the minimum hold
              e.t_lift_5cm_s = t0 + 1.0 + rng.next_unit();
              e.hold_duration_s = 1.0 + 1.5 * rng.next_unit();
              e.t_release_done_s = *e.t_lift_5cm_s + *e.hold_duration_s + 0.3;
              break;
            case 3: // slipped during the hold
              e.t_lift_5cm_s = t0 + 1.0 + rng.next_unit();
              e.hold_duration_s = 3.2 + 0.6 * rng.next_unit();
              e.slip_during_hold = true;
              e.t_release_done_s = *e.t_lift_5cm_s + *e.hold_duration_s + 0.3;
              break;
            default: // release event past the deadline
              e.t_lift_5cm_s = t0 + 1.0 + rng.next_unit();
              e.hold_duration_s = 3.2 + 0.6 * rng.next_unit();
              e.t_release_done_s = t0 + 10.05 + rng.next_unit();
              break;
          }
        }
        out.session.attempts.push_back(a);
        ++total_attempts;
        t0 += 20.0;
      }
      total_good += good;
      rate_sum += static_cast<double>(good) / static_cast<double>(cfg.attempts);
    }
    macro_sum += rate_sum / static_cast<double>(pose_ps.size());
  }

  GroundTruth::Ycb y;
  y.successes = static_cast<int>(total_good);
  y.trials = static_cast<int>(total_attempts);
  y.micro = static_cast<double>(total_good) / static_cast<double>(total_attempts);
  y.macro = macro_sum / static_cast<double>(cfg.p_table.size());
  out.truth.seed = cfg.seed;
  out.truth.ycb = y;
  return out;
}

SynthBundle gen_energy(const EnergyGenConfig& cfg) {
  if (cfg.trials < 1 || !(cfg.grasp_s > 0) || !(cfg.hold_s > 0) || !(cfg.release_s > 0) ||
      !(cfg.rate_hz >= 10)) {
    throw std::invalid_argument("gen_energy: positive durations, rate >= 10 Hz, trials >= 1");
  }
  SynthBundle out;
  out.session = base_session("synthetic-gripper", "synthetic-rig");
  out.session.manifest.hold_nominal_s = 10.0;
  add_artifact(out.session, "energy-object", ArtifactShape::Cylinder, 50.0,
               cfg.mass_g > 0 ? cfg.mass_g : 0.0);
  SeededRng rng(mix_seed(cfg.seed, "energy"));
  append_energy_trials(out.session, out.truth, "energy-object", cfg, {}, rng);
  out.truth.seed = cfg.seed;
  return out;
}

SynthBundle gen_slip(const SlipGenConfig& cfg) {
  if (cfg.trials < 1 || !(cfg.f_true_n > 0) || !(cfg.ramp_rate_n_per_s > 0) ||
      !(cfg.rate_hz >= 10)) {
    throw std::invalid_argument("gen_slip: positive force and ramp rate, rate >= 10 Hz");
  }
  SynthBundle out;
  out.session = base_session("synthetic-gripper", "synthetic-rig");
  const std::string artifact_id = "cyl-" + format_double(cfg.dimension_mm);
  add_artifact(out.session, artifact_id, ArtifactShape::Cylinder, cfg.dimension_mm, 500.0);

  LoadShape shape;
  shape.ramp_rate = cfg.ramp_rate_n_per_s;
  shape.post_drop_level = cfg.post_drop_level;
  shape.rate_hz = cfg.rate_hz;
  shape.transient_dip = cfg.transient_dip;

  SeededRng rng(mix_seed(cfg.seed, "slip"));
  append_load_trials(out.session, out.truth, artifact_id, cfg.dimension_mm, cfg.f_true_n,
                     cfg.trials, cfg.dispersion_n, shape, TraceRole::Slip, cfg.noise_sd_n, rng);
  out.truth.seed = cfg.seed;
  return out;
}

SynthBundle gen_transfer(const TransferGenConfig& cfg) {
  if (cfg.groups.empty()) throw std::invalid_argument("gen_transfer: no groups");
  for (const TransferGenConfig::Group& g : cfg.groups) {
    if (!(g.mean_s > 0) || g.sd_s < 0 || g.cycles < 1) {
      throw std::invalid_argument("gen_transfer: mean > 0, sd >= 0, cycles >= 1");
    }
  }
  SynthBundle out;
  out.session = base_session("synthetic-gripper", "synthetic-rig");
  SeededRng rng(mix_seed(cfg.seed, "transfer"));

  int total = 0;
  int fault_free_total = 0;
  for (const TransferGenConfig::Group& g : cfg.groups) {
    double sum = 0;
    int fault_free = 0;
    for (int k = 1; k <= g.cycles; ++k) {
      TransferCycle c;
      c.participant_id = g.label + "-p" + two_digit(k);
      c.group = ParticipantGroup::from_label(g.label);
      double d = g.mean_s;
      if (g.sd_s > 0) {
        do {
          d = g.mean_s + g.sd_s * rng.next_normal();
        } while (!(d > 0));
      }
      c.duration_s = d;
      if (cfg.fault_rate > 0 && rng.next_unit() < cfg.fault_rate) {
        switch (rng.next_index(3)) {
          case 0: c.fault_mechanical = true; break;
          case 1: c.fault_electrical = true; break;
          default: c.fault_software = true; break;
        }
      } else {
        sum += d;
        ++fault_free;
      }
      out.session.transfer_cycles.push_back(c);
      ++total;
    }
    fault_free_total += fault_free;
    if (fault_free > 0) {
      out.truth.transfer_groups.push_back(
          {g.label, sum / static_cast<double>(fault_free), g.cycles});
    }
  }
  std::sort(out.truth.transfer_groups.begin(), out.truth.transfer_groups.end(),
            [](const auto& a, const auto& b) { return a.group < b.group; });
  out.truth.transfer_success_rate =
      static_cast<double>(fault_free_total) / static_cast<double>(total);
  out.truth.seed = cfg.seed;
  return out;
}

SynthBundle gen_mixed(std::uint64_t seed) {
  SeededRng rng(mix_seed(seed, "mixed"));
  SynthBundle out;
  Session& s = out.session;
  GroundTruth& gt = out.truth;
  gt.seed = seed;

  s = base_session("synthetic-gripper", "synthetic-rig");
  s.manifest.hold_nominal_s = 10.0;

  GripperProfile profile;
  profile.compliance = static_cast<Compliance>(rng.next_index(4));
  profile.grip_type = static_cast<GripType>(rng.next_index(2));
  profile.ideal_shape = static_cast<IdealShape>(rng.next_index(3));
  profile.range_min_mm = 30;
  profile.range_max_mm = 110;
  s.manifest.gripper_profile = profile;
  gt.profile_code = profile.code();

  add_artifact(s, "cyl-45", ArtifactShape::Cylinder, 45.0, 400.0);
  add_artifact(s, "box-70", ArtifactShape::Box, 70.0, 550.0);

  // Attempts: three objects, two poses, three repeats, quantized odds.
  {
    YcbGenConfig ycfg;
    for (const char* obj : {"obj-a", "obj-b", "obj-c"}) {
      std::vector<double> ps;
      for (int j = 0; j < 2; ++j) ps.push_back(0.25 * static_cast<double>(rng.next_index(5)));
      ycfg.p_table[obj] = ps;
    }
    ycfg.attempts = 3;
    ycfg.seed = mix_seed(seed, "mixed.ycb");
    SynthBundle sub = gen_ycb(ycfg);
    s.attempts = std::move(sub.session.attempts);
    gt.ycb = sub.truth.ycb;
  }

  // Cycle times: odd trial counts keep the median exactly on target.
  double cursor = 5.0;
  append_cycle_trials(s, gt, "cyl-45", 45.0, 2.5 + 2.5 * rng.next_unit(), 7, 0.2, cursor);
  append_cycle_trials(s, gt, "box-70", 70.0, 2.5 + 2.5 * rng.next_unit(), 9, 0.2, cursor);

  append_strength_trials(s, gt, "cyl-45", 45.0, 6.0 + 6.0 * rng.next_unit(), 5, 0.4, 500.0);
  append_strength_trials(s, gt, "box-70", 70.0, 6.0 + 6.0 * rng.next_unit(), 5, 0.4, 500.0);

  {
    LoadShape shape; // defaults: 4 N/s ramp, drop to 0.3, 500 Hz
    append_load_trials(s, gt, "cyl-45", 45.0, 3.0 + 6.0 * rng.next_unit(), 5, 0.3, shape,
                       TraceRole::Slip, 0.0, rng);
    append_load_trials(s, gt, "box-70", 70.0, 3.0 + 6.0 * rng.next_unit(), 5, 0.3, shape,
                       TraceRole::Slip, 0.0, rng);
    append_load_trials(s, gt, "cyl-45", 45.0, 5.0 + 10.0 * rng.next_unit(), 5, 0.5, shape,
                       TraceRole::Pull, 0.0, rng);
    append_load_trials(s, gt, "box-70", 70.0, 5.0 + 10.0 * rng.next_unit(), 5, 0.5, shape,
                       TraceRole::Pull, 0.0, rng);
  }

  {
    EnergyGenConfig ecfg;
    ecfg.trials = 3;
    ecfg.p_grasp_w = 0.5 + 1.5 * rng.next_unit();
    ecfg.p_hold_w = 0.05 + 0.25 * rng.next_unit();
    ecfg.p_release_w = 0.3 + 1.2 * rng.next_unit();
    ecfg.grasp_s = 2.0;
    ecfg.hold_s = 6.0 + static_cast<double>(rng.next_index(5));
    ecfg.release_s = 2.0;
    ecfg.mass_g = 100.0 * static_cast<double>(2 + rng.next_index(7));
    add_artifact(s, "energy-object", ArtifactShape::Cylinder, 50.0, ecfg.mass_g);
    append_energy_trials(s, gt, "energy-object", ecfg, {}, rng);
  }

  {
    const TransferTarget groups[] = {
        {"bachelor", 10.0 + 15.0 * rng.next_unit(), 5, 0.8},
        {"untrained", 10.0 + 15.0 * rng.next_unit(), 7, 0.8},
    };
    append_transfer_groups(s, gt, groups);
  }
  return out;
}

SynthBundle gen_replica(std::uint64_t seed) {
  SynthBundle out;
  Session& s = out.session;
  GroundTruth& gt = out.truth;
  gt.seed = seed;

  s = base_session("gripper-2f-adaptive", "arm-6dof");
  s.manifest.hold_nominal_s = 10.0;
  s.manifest.operator_notes = "synthetic benchmark campaign";
  GripperProfile profile{Compliance::SemiTwo, GripType::Pinch, IdealShape::Box, 40.0, 100.0};
  s.manifest.gripper_profile = profile;
  gt.profile_code = profile.code();

  add_artifact(s, "cyl-32", ArtifactShape::Cylinder, 32.0, 300.0);
  add_artifact(s, "cyl-50", ArtifactShape::Cylinder, 50.0, 600.0);
  add_artifact(s, "cyl-75", ArtifactShape::Cylinder, 75.0, 500.0);
  add_artifact(s, "cyl-80", ArtifactShape::Cylinder, 80.0, 450.0);
  add_artifact(s, "cyl-100", ArtifactShape::Cylinder, 100.0, 400.0);
  add_artifact(s, "box-50", ArtifactShape::Box, 50.0, 350.0);
  add_artifact(s, "box-75", ArtifactShape::Box, 75.0, 450.0);
  add_artifact(s, "box-100", ArtifactShape::Box, 100.0, 550.0);

  double cursor = 5.0;
  append_cycle_trials(s, gt, "cyl-50", 50.0, 3.91, 32, 0.3, cursor);
  append_cycle_trials(s, gt, "cyl-80", 80.0, 3.23, 32, 0.3, cursor);

  append_strength_trials(s, gt, "cyl-50", 50.0, 9.79, 10, 0.4, 500.0);
  append_strength_trials(s, gt, "cyl-80", 80.0, 8.18, 10, 0.4, 500.0);

  SeededRng rng(mix_seed(seed, "replica"));
  {
    LoadShape shape; // 4 N/s ramp, drop to 0.3, 500 Hz
    append_load_trials(s, gt, "cyl-32", 32.0, 6.28, 10, 0.3, shape, TraceRole::Slip, 0.0, rng);
    append_load_trials(s, gt, "cyl-50", 50.0, 5.78, 10, 0.3, shape, TraceRole::Slip, 0.0, rng);
    append_load_trials(s, gt, "cyl-75", 75.0, 6.24, 10, 0.3, shape, TraceRole::Slip, 0.0, rng);
    append_load_trials(s, gt, "cyl-100", 100.0, 3.75, 10, 0.3, shape, TraceRole::Slip, 0.0, rng);

    append_load_trials(s, gt, "box-50", 50.0, 11.37, 10, 0.5, shape, TraceRole::Pull, 0.0, rng);
    append_load_trials(s, gt, "box-75", 75.0, 11.99, 10, 0.5, shape, TraceRole::Pull, 0.0, rng);
    LoadShape safety = shape;
    safety.post_drop_level = 1.0; // the bench stop ends these pulls
    append_load_trials(s, gt, "box-100", 100.0, 7.67, 10, 0.5, safety, TraceRole::Pull, 0.0,
                       rng);
  }

  {
    EnergyGenConfig ecfg; // stock powers and durations are the defaults
    ecfg.trials = 10;
    // Per-trial scale factors around 1 keep every energy median on target.
    const std::vector<double> offs = paired_offsets(10, 0.04);
    std::vector<double> scales(offs.size());
    for (std::size_t i = 0; i < offs.size(); ++i) scales[i] = 1.0 + offs[i];
    append_energy_trials(s, gt, "cyl-50", ecfg, scales, rng);
  }

  {
    const TransferTarget groups[] = {
        {"bachelor", 16.1, 12, 1.2},
        {"master", 14.2, 12, 1.2},
        {"untrained", 22.8, 11, 2.0},
        {"experienced", 17.6, 10, 1.5},
    };
    append_transfer_groups(s, gt, groups);
  }
  return out;
}

namespace {

json dim_table_to_json(const std::vector<GroundTruth::DimValue>& v) {
  json arr = json::array();
  for (const GroundTruth::DimValue& d : v) {
    arr.push_back({{"dimension_mm", d.dimension_mm}, {"value", d.value}});
  }
  return arr;
}

std::vector<GroundTruth::DimValue> dim_table_from_json(const json& arr) {
  std::vector<GroundTruth::DimValue> out;
  for (const json& e : arr) {
    out.push_back({e.at("dimension_mm").get<double>(), e.at("value").get<double>()});
  }
  return out;
}

} // namespace

void write_ground_truth(const GroundTruth& gt, const fs::path& file) {
  json j;
  j["seed"] = gt.seed;
  if (gt.ycb) {
    j["ycb"] = {{"successes", gt.ycb->successes},
                {"trials", gt.ycb->trials},
                {"micro", gt.ycb->micro},
                {"macro", gt.ycb->macro}};
  }
  if (!gt.cycle_time_s.empty()) j["cycle_time_s"] = dim_table_to_json(gt.cycle_time_s);
  if (!gt.strength_plateau_n.empty()) {
    j["strength_plateau_n"] = dim_table_to_json(gt.strength_plateau_n);
  }
  if (!gt.slip_force_n.empty()) j["slip_force_n"] = dim_table_to_json(gt.slip_force_n);
  if (!gt.ideal_payload_n.empty()) j["ideal_payload_n"] = dim_table_to_json(gt.ideal_payload_n);
  if (gt.energy) {
    j["energy"] = {{"e_grasp_j", gt.energy->e_grasp_j},
                   {"e_hold_j", gt.energy->e_hold_j},
                   {"e_release_j", gt.energy->e_release_j},
                   {"e_cycle_j", gt.energy->e_cycle_j},
                   {"p_hold_w", gt.energy->p_hold_w},
                   {"mass_g", gt.energy->mass_g}};
  }
  if (gt.transfer_success_rate) j["transfer_success_rate"] = *gt.transfer_success_rate;
  if (!gt.transfer_groups.empty()) {
    json arr = json::array();
    for (const GroundTruth::TransferGroup& g : gt.transfer_groups) {
      arr.push_back({{"group", g.group}, {"mean_s", g.mean_s}, {"cycles", g.cycles}});
    }
    j["transfer_groups"] = arr;
  }
  if (gt.profile_code) j["profile_code"] = *gt.profile_code;

  std::ofstream outf(file, std::ios::binary);
  if (!outf) raise(errc::io_error, "cannot write " + file.string());
  outf << j.dump(2) << '\n';
  if (!outf) raise(errc::io_error, "write failed for " + file.string());
}

GroundTruth load_ground_truth(const fs::path& file) {
  std::ifstream in(file);
  if (!in) raise(errc::io_error, "cannot open " + file.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    raise(errc::parse_error, file.string() + ": " + e.what());
  }

  GroundTruth gt;
  try {
    gt.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("ycb")) {
      GroundTruth::Ycb y;
      y.successes = j["ycb"].at("successes").get<int>();
      y.trials = j["ycb"].at("trials").get<int>();
      y.micro = j["ycb"].at("micro").get<double>();
      y.macro = j["ycb"].at("macro").get<double>();
      gt.ycb = y;
    }
    if (j.contains("cycle_time_s")) gt.cycle_time_s = dim_table_from_json(j["cycle_time_s"]);
    if (j.contains("strength_plateau_n")) {
      gt.strength_plateau_n = dim_table_from_json(j["strength_plateau_n"]);
    }
    if (j.contains("slip_force_n")) gt.slip_force_n = dim_table_from_json(j["slip_force_n"]);
    if (j.contains("ideal_payload_n")) {
      gt.ideal_payload_n = dim_table_from_json(j["ideal_payload_n"]);
    }
    if (j.contains("energy")) {
      GroundTruth::Energy e;
      e.e_grasp_j = j["energy"].at("e_grasp_j").get<double>();
      e.e_hold_j = j["energy"].at("e_hold_j").get<double>();
      e.e_release_j = j["energy"].at("e_release_j").get<double>();
      e.e_cycle_j = j["energy"].at("e_cycle_j").get<double>();
      e.p_hold_w = j["energy"].at("p_hold_w").get<double>();
      e.mass_g = j["energy"].at("mass_g").get<double>();
      gt.energy = e;
    }
    if (j.contains("transfer_success_rate")) {
      gt.transfer_success_rate = j["transfer_success_rate"].get<double>();
    }
    if (j.contains("transfer_groups")) {
      for (const json& e : j["transfer_groups"]) {
        gt.transfer_groups.push_back({e.at("group").get<std::string>(),
                                      e.at("mean_s").get<double>(),
                                      e.at("cycles").get<int>()});
      }
    }
    if (j.contains("profile_code")) gt.profile_code = j["profile_code"].get<std::string>();
  } catch (const json::exception& e) {
    raise(errc::parse_error, file.string() + ": " + e.what());
  }
  return gt;
}

void write_bundle(const SynthBundle& bundle, const fs::path& dir) {
  write_session(bundle.session, dir);
  write_ground_truth(bundle.truth, dir / "ground_truth.json");
}

} // namespace cegb
