#pragma once

/// Whole-session analysis into a self-describing report, plus the JSON,
/// Markdown and comparison emitters. A report echoes every knob that went
/// into it (seed, bootstrap size, detector thresholds), so a collaborator
/// can reproduce it from the same bundle byte for byte.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cegb/metrics.hpp"
#include "cegb/model.hpp"
#include "cegb/signal.hpp"
#include "cegb/stats.hpp"

namespace cegb {

struct AnalyzeOptions {
  std::uint64_t seed = 42;
  std::size_t bootstrap_resamples = 2000;
  double confidence = 0.95;
  SlipDetectorConfig slip;
  double plateau_window_s = 0.5;
  double smoothing_window_s = 0.05;
  ClassifyRules rules;

  bool operator==(const AnalyzeOptions&) const = default;
};

struct ReportMeta {
  std::string tool_version;
  std::string report_schema;
  std::string gripper_name;
  std::string platform_name;
  std::optional<std::string> notes;
  AnalyzeOptions options;

  bool operator==(const ReportMeta&) const = default;
};

struct CycleSummary {
  double dimension_mm = 0;
  SummaryStat t_cycle_s;

  bool operator==(const CycleSummary&) const = default;
};

struct StrengthSummary {
  double dimension_mm = 0;
  SummaryStat peak_n;
  SummaryStat plateau_n; // the reported grasp strength

  bool operator==(const StrengthSummary&) const = default;
};

struct SlipSummary {
  double dimension_mm = 0;
  SummaryStat f_slip_n;
  std::optional<SummaryStat> mu_eff; // needs strength data for the artifact
  std::optional<SummaryStat> q_hold; // needs applied torque and finger length

  bool operator==(const SlipSummary&) const = default;
};

// Cycle time, grasp strength and slip resistance, each keyed by artifact
// dimension and sorted by it.
struct NistResult {
  std::vector<CycleSummary> cycle;
  std::vector<StrengthSummary> strength;
  std::vector<SlipSummary> slip;

  bool operator==(const NistResult&) const = default;
};

struct Report {
  ReportMeta meta;
  std::vector<Violation> violations;
  // A family is present exactly when the session holds data for it.
  std::optional<YcbResult> ycb;
  std::optional<NistResult> nist;
  std::optional<TransferResult> transfer;
  std::optional<EnergyResult> energy;
  std::optional<IipbResult> iipb;

  bool operator==(const Report&) const = default;
};

// Validates the session and computes every family it has data for. When
// validation fails the report carries only the violations, never partial
// numbers.
Report analyze_session(const Session& session, const AnalyzeOptions& options = {});

// Canonical JSON: sorted keys, two-space indent, shortest round-trip
// numbers. Equal reports serialize to identical bytes, and
// report_from_json(report_to_json(r)) == r.
std::string report_to_json(const Report& report);
Report report_from_json(const std::string& text);

std::string report_to_markdown(const Report& report);

// Side-by-side Markdown: one column per report, in input order, keyed by
// gripper and platform; families a report lacks show "not measured".
// Reports must share the report schema version, else SchemaMismatch.
std::string comparison_markdown(std::span<const Report> reports);

} // namespace cegb
