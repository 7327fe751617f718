#include "cegb/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "cegb/error.hpp"

namespace cegb {

const char* to_code(FailReason r) noexcept {
  switch (r) {
    case FailReason::None: return "none";
    case FailReason::NoLift: return "no_lift";
    case FailReason::LiftTooSlow: return "lift_too_slow";
    case FailReason::HoldTooShort: return "hold_too_short";
    case FailReason::SlipDuringHold: return "slip_during_hold";
    case FailReason::Timeout: return "timeout";
    case FailReason::OverrideFailure: return "override_failure";
  }
  return "?";
}

Classification classify_attempt(const GraspAttempt& attempt, const ClassifyRules& rules) {
  const AttemptEvents& e = attempt.events;
  const bool has_events = e.t_lift_5cm_s.has_value() || e.hold_duration_s.has_value() ||
                          e.t_release_done_s.has_value() || e.slip_during_hold;

  if (!has_events) {
    if (attempt.outcome_override) {
      return *attempt.outcome_override == Outcome::Success
                 ? Classification{Outcome::Success, FailReason::None}
                 : Classification{Outcome::Failure, FailReason::OverrideFailure};
    }
    return {Outcome::Failure, FailReason::NoLift};
  }

  Classification c{Outcome::Success, FailReason::None};
  const double t0 = e.t_grasp_cmd_s;
  if (!e.t_lift_5cm_s) {
    c = {Outcome::Failure, FailReason::NoLift};
  } else if (*e.t_lift_5cm_s - t0 > rules.lift_within_s) {
    c = {Outcome::Failure, FailReason::LiftTooSlow};
  } else if (!e.hold_duration_s || *e.hold_duration_s < rules.hold_min_s) {
    c = {Outcome::Failure, FailReason::HoldTooShort};
  } else if (e.slip_during_hold) {
    c = {Outcome::Failure, FailReason::SlipDuringHold};
  } else {
    const double deadline = t0 + rules.event_deadline_s;
    const bool late = (e.t_lift_5cm_s && *e.t_lift_5cm_s > deadline) ||
                      (e.t_release_done_s && *e.t_release_done_s > deadline);
    if (late) c = {Outcome::Failure, FailReason::Timeout};
  }

  if (attempt.outcome_override && *attempt.outcome_override != c.outcome) {
    raise(errc::inconsistent_override,
          "attempt " + attempt.object_id + "/" + std::to_string(attempt.pose_index) + "/" +
              std::to_string(attempt.attempt_index) + ": override says " +
              (*attempt.outcome_override == Outcome::Success ? "success" : "failure") +
              " but events say otherwise");
  }
  return c;
}

namespace {

std::string dim_label(double dimension_mm) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, dimension_mm);
  return std::string(buf, res.ptr);
}

} // namespace

YcbResult ycb_aggregate(std::span<const GraspAttempt> attempts, const BootstrapConfig& cfg,
                        const ClassifyRules& rules) {
  if (attempts.empty()) raise(errc::empty_sample, "ycb_aggregate with no attempts");

  struct PoseCounts {
    std::uint64_t good = 0;
    std::vector<int> indices;
  };
  std::map<std::string, std::map<int, PoseCounts>> objects;
  std::vector<double> lift_times;
  std::vector<double> release_times;

  for (const GraspAttempt& a : attempts) {
    const Classification c = classify_attempt(a, rules);
    PoseCounts& pc = objects[a.object_id][a.pose_index];
    pc.indices.push_back(a.attempt_index);
    if (c.outcome == Outcome::Success) ++pc.good;

    const AttemptEvents& e = a.events;
    if (e.t_lift_5cm_s) lift_times.push_back(*e.t_lift_5cm_s - e.t_grasp_cmd_s);
    if (e.t_lift_5cm_s && e.hold_duration_s && e.t_release_done_s) {
      // The release command is not logged; it is taken as the hold end.
      release_times.push_back(*e.t_release_done_s - (*e.t_lift_5cm_s + *e.hold_duration_s));
    }
  }

  YcbResult out;
  std::uint64_t total_good = 0;
  std::uint64_t total_attempts = 0;
  std::vector<double> object_rates;

  for (auto& [object_id, poses] : objects) {
    // Pose indices must be exactly 1..k.
    int expected_pose = 1;
    std::size_t group_size = 0;
    for (auto& [pose_index, pc] : poses) {
      if (pose_index != expected_pose) {
        raise(errc::unbalanced_attempts,
              "object " + object_id + ": pose group " + std::to_string(expected_pose) +
                  " has no attempts");
      }
      ++expected_pose;

      std::sort(pc.indices.begin(), pc.indices.end());
      for (std::size_t i = 0; i < pc.indices.size(); ++i) {
        if (pc.indices[i] != static_cast<int>(i) + 1) {
          raise(errc::unbalanced_attempts,
                "object " + object_id + "/pose " + std::to_string(pose_index) +
                    ": attempt indices are not contiguous from 1");
        }
      }
      if (group_size == 0) {
        group_size = pc.indices.size();
      } else if (pc.indices.size() != group_size) {
        raise(errc::unbalanced_attempts,
              "object " + object_id + ": differing attempt counts across pose groups");
      }
    }

    double rate_sum = 0;
    for (const auto& [pose_index, pc] : poses) {
      const std::uint64_t a_count = pc.indices.size();
      out.per_pose.push_back(
          {object_id, pose_index, make_proportion(pc.good, a_count, cfg.confidence)});
      rate_sum += static_cast<double>(pc.good) / static_cast<double>(a_count);
      total_good += pc.good;
      total_attempts += a_count;
    }
    const double s_o = rate_sum / static_cast<double>(poses.size());
    out.per_object.push_back({object_id, poses.size(), s_o});
    object_rates.push_back(s_o);
  }

  out.micro = make_proportion(total_good, total_attempts, cfg.confidence);

  double macro_sum = 0;
  for (double r : object_rates) macro_sum += r;
  out.macro = macro_sum / static_cast<double>(object_rates.size());

  // Bootstrap over objects: resample object rates, take the mean.
  {
    SeededRng rng(mix_seed(cfg.seed, "ycb.macro"));
    const std::size_t m = object_rates.size();
    std::vector<double> boot(cfg.resamples);
    for (std::size_t b = 0; b < cfg.resamples; ++b) {
      double s = 0;
      for (std::size_t i = 0; i < m; ++i) s += object_rates[rng.next_index(m)];
      boot[b] = s / static_cast<double>(m);
    }
    std::sort(boot.begin(), boot.end());
    const double alpha = 1.0 - cfg.confidence;
    out.macro_ci.lo = quantile(boot, alpha / 2.0);
    out.macro_ci.hi = quantile(boot, 1.0 - alpha / 2.0);
  }

  if (!lift_times.empty()) {
    BootstrapConfig sub = cfg;
    sub.seed = mix_seed(cfg.seed, "ycb.time_to_lift");
    out.time_to_lift_s = summarize(lift_times, sub);
  }
  if (!release_times.empty()) {
    BootstrapConfig sub = cfg;
    sub.seed = mix_seed(cfg.seed, "ycb.time_to_release");
    out.time_to_release_s = summarize(release_times, sub);
  }
  return out;
}

SummaryStat cycle_time(std::span<const std::pair<double, double>> start_stop,
                       const BootstrapConfig& cfg) {
  if (start_stop.empty()) raise(errc::empty_sample, "cycle_time with no trials");
  std::vector<double> durations;
  durations.reserve(start_stop.size());
  for (std::size_t i = 0; i < start_stop.size(); ++i) {
    const auto& [start, stop] = start_stop[i];
    if (!(stop > start)) {
      raise(errc::negative_duration,
            "cycle trial " + std::to_string(i + 1) + ": t_stop must exceed t_start");
    }
    durations.push_back(stop - start);
  }
  return summarize(durations, cfg);
}

PeakPlateau grasp_strength_trial(std::span<const SampledTrace> finger_traces,
                                 double plateau_window_s, double smoothing_window_s) {
  if (finger_traces.empty()) raise(errc::empty_sample, "strength trial with no finger traces");
  const SampledTrace& first = finger_traces[0];
  for (const SampledTrace& t : finger_traces.subspan(1)) {
    if (t.size() != first.size()) {
      raise(errc::trace_span_mismatch, "finger traces have different sample counts");
    }
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t.samples[i].t_s != first.samples[i].t_s) {
        raise(errc::trace_span_mismatch, "finger traces are not on a common timestamp grid");
      }
    }
  }

  SampledTrace sum;
  sum.kind = TraceKind::Force;
  sum.samples.resize(first.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    double v = 0;
    for (const SampledTrace& t : finger_traces) v += t.value_at(i);
    sum.samples[i] = {first.samples[i].t_s, v, 0};
  }
  return peak_plateau(sum, plateau_window_s, smoothing_window_s);
}

SlipTrial slip_metrics(const SampledTrace& tangential, std::optional<double> normals_sum_n,
                       std::optional<double> applied_torque_nm,
                       std::optional<double> finger_length_m, const SlipDetectorConfig& cfg) {
  const SlipOnset onset = detect_slip_onset(tangential, cfg);

  SlipTrial out;
  out.f_slip_n = onset.force_n;
  out.t_slip_s = onset.t_slip_s;
  out.sustained_drop = onset.sustained_drop;

  if (normals_sum_n) {
    if (!(*normals_sum_n > 0)) {
      raise(errc::zero_normal_force, "normal force sum must be positive for mu_eff");
    }
    out.mu_eff = onset.force_n / *normals_sum_n;
  }
  if (applied_torque_nm) {
    if (!(*applied_torque_nm > 0)) {
      throw std::invalid_argument("slip_metrics: applied torque must be positive");
    }
    if (!finger_length_m || !(*finger_length_m > 0)) {
      raise(errc::missing_finger_length,
            "hold quality needs the artifact finger length when torque is given");
    }
    out.q_hold = onset.force_n * *finger_length_m / *applied_torque_nm;
  }
  return out;
}

TransferResult transfer_summary(std::span<const TransferCycle> cycles,
                                const BootstrapConfig& cfg) {
  if (cycles.empty()) raise(errc::empty_sample, "transfer_summary with no cycles");

  auto build = [&cfg](std::span<const TransferCycle* const> bucket,
                      std::string_view label) -> TransferStats {
    TransferStats out;
    out.cycles = bucket.size();
    std::uint64_t good = 0;
    std::vector<double> durations;
    for (const TransferCycle* c : bucket) {
      if (c->success()) {
        ++good;
        durations.push_back(c->duration_s);
      }
    }
    out.robustness = make_proportion(good, bucket.size(), cfg.confidence);
    if (!durations.empty()) {
      double s = 0;
      for (double d : durations) s += d;
      out.mean_s = s / static_cast<double>(durations.size());
      BootstrapConfig sub = cfg;
      sub.seed = mix_seed(cfg.seed, std::string("transfer.") + std::string(label));
      out.duration_s = summarize(durations, sub);
    }
    return out;
  };

  std::vector<const TransferCycle*> all;
  std::map<ParticipantGroup, std::vector<const TransferCycle*>> groups;
  for (const TransferCycle& c : cycles) {
    all.push_back(&c);
    groups[c.group].push_back(&c);
  }

  TransferResult out;
  out.overall = build(all, "overall");
  for (const auto& [group, bucket] : groups) {
    out.per_group.emplace_back(group, build(bucket, group.label));
  }
  return out;
}

EnergyResult energy_metrics(std::span<const EnergyTrial> trials, double t_hold_nominal_s,
                            const BootstrapConfig& cfg, double smoothing_window_s) {
  if (trials.empty()) raise(errc::empty_sample, "energy_metrics with no trials");

  std::vector<double> e_grasp, e_hold, e_release, e_cycle, p_hold;
  std::vector<double> ratio_grasp, ratio_cycle;

  for (std::size_t idx = 0; idx < trials.size(); ++idx) {
    const EnergyTrial& trial = trials[idx];
    const std::vector<PhaseMark> marks =
        segment_phases(trial.trace, trial.marks, smoothing_window_s);

    const PhaseMark* grasp = nullptr;
    const PhaseMark* hold = nullptr;
    const PhaseMark* release = nullptr;
    for (const PhaseMark& m : marks) {
      if (m.phase == Phase::Grasp) grasp = &m;
      if (m.phase == Phase::Hold) hold = &m;
      if (m.phase == Phase::Release) release = &m;
    }
    if (!grasp || !hold || !release) {
      raise(errc::phase_inference_failed,
            "energy trial " + std::to_string(idx + 1) + ": grasp/hold/release phases required");
    }

    const double eg = integrate_power(trial.trace, grasp->t_start_s, grasp->t_end_s);
    const double eh = integrate_power(trial.trace, hold->t_start_s, hold->t_end_s);
    const double er = integrate_power(trial.trace, release->t_start_s, release->t_end_s);
    e_grasp.push_back(eg);
    e_hold.push_back(eh);
    e_release.push_back(er);
    e_cycle.push_back(eg + eh + er);
    p_hold.push_back(eh / (hold->t_end_s - hold->t_start_s));

    if (trial.object_mass_g) {
      if (*trial.object_mass_g == 0) {
        raise(errc::zero_mass,
              "energy trial " + std::to_string(idx + 1) + ": zero object mass");
      }
      ratio_grasp.push_back(eg / *trial.object_mass_g);
      ratio_cycle.push_back((eg + eh + er) / *trial.object_mass_g);
    }
  }

  auto summary = [&cfg](std::span<const double> v, std::string_view label) {
    BootstrapConfig sub = cfg;
    sub.seed = mix_seed(cfg.seed, std::string("energy.") + std::string(label));
    return summarize(v, sub);
  };

  EnergyResult out;
  out.e_grasp_j = summary(e_grasp, "grasp");
  out.e_hold_j = summary(e_hold, "hold");
  out.e_release_j = summary(e_release, "release");
  out.e_cycle_j = summary(e_cycle, "cycle");
  out.p_hold_mean_w = quantile(p_hold, 0.5);
  out.e_hold10_j = t_hold_nominal_s * out.p_hold_mean_w;
  if (!ratio_grasp.empty()) {
    out.energy_to_weight_grasp_j_per_g = quantile(ratio_grasp, 0.5);
    out.energy_to_weight_cycle_j_per_g = quantile(ratio_cycle, 0.5);
  }
  out.t_hold_nominal_s = t_hold_nominal_s;
  return out;
}

IipbResult iipb_metrics(std::span<const PullTrials> artifacts,
                        const std::optional<GripperProfile>& profile,
                        const BootstrapConfig& cfg, const SlipDetectorConfig& slip_cfg) {
  if (!profile) {
    raise(errc::missing_profile, "ideal payload needs the gripper intent profile");
  }

  IipbResult out;
  out.profile_code = profile->code();
  for (const PullTrials& art : artifacts) {
    if (art.traces.empty()) continue;
    std::vector<double> forces;
    forces.reserve(art.traces.size());
    for (const SampledTrace& t : art.traces) {
      forces.push_back(detect_slip_onset(t, slip_cfg).force_n);
    }
    BootstrapConfig sub = cfg;
    sub.seed = mix_seed(cfg.seed, "iipb." + dim_label(art.dimension_mm));
    out.per_artifact.push_back({art.dimension_mm, summarize(forces, sub)});
  }
  std::sort(out.per_artifact.begin(), out.per_artifact.end(),
            [](const IipbArtifact& a, const IipbArtifact& b) {
              return a.dimension_mm < b.dimension_mm;
            });
  return out;
}

} // namespace cegb
