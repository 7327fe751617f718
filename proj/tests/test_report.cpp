#include <doctest.h>

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cegb/error.hpp"
#include "cegb/report.hpp"
#include "cegb/synth.hpp"
#include "cegb/version.hpp"

using namespace cegb;

namespace {

TransferGenConfig one_group() {
  TransferGenConfig cfg;
  cfg.groups = {{"bachelor", 16.1, 1.0, 8}};
  return cfg;
}

} // namespace

TEST_SUITE("report") {

TEST_CASE("analysis echoes its configuration") {
  AnalyzeOptions options;
  options.seed = 99;
  options.bootstrap_resamples = 500;
  const Report r = analyze_session(gen_mixed(4).session, options);
  CHECK(r.meta.tool_version == kToolVersion);
  CHECK(r.meta.report_schema == kReportSchemaVersion);
  CHECK(r.meta.gripper_name == "synthetic-gripper");
  CHECK(r.meta.options == options);
  CHECK(r.violations.empty());
}

TEST_CASE("every family with data is computed, none are zeroed") {
  const Report r = analyze_session(gen_mixed(4).session);
  CHECK(r.ycb.has_value());
  CHECK(r.nist.has_value());
  CHECK(r.transfer.has_value());
  CHECK(r.energy.has_value());
  CHECK(r.iipb.has_value());
}

TEST_CASE("families without data stay null") {
  const Report transfer_only = analyze_session(gen_transfer(one_group()).session);
  CHECK_FALSE(transfer_only.ycb.has_value());
  CHECK_FALSE(transfer_only.nist.has_value());
  CHECK(transfer_only.transfer.has_value());
  CHECK_FALSE(transfer_only.energy.has_value());
  CHECK_FALSE(transfer_only.iipb.has_value());

  const Report slip_only = analyze_session(gen_slip({}).session);
  REQUIRE(slip_only.nist.has_value());
  CHECK(slip_only.nist->cycle.empty());
  CHECK(slip_only.nist->strength.empty());
  CHECK_FALSE(slip_only.nist->slip.empty());
  CHECK_FALSE(slip_only.nist->slip[0].mu_eff.has_value()); // no strength trials to divide by
}

TEST_CASE("a session with violations yields no metrics") {
  Session s = gen_mixed(4).session;
  s.manifest.gripper_name.clear();
  const Report r = analyze_session(s);
  CHECK_FALSE(r.violations.empty());
  CHECK_FALSE(r.ycb.has_value());
  CHECK_FALSE(r.nist.has_value());
  CHECK_FALSE(r.transfer.has_value());
  CHECK_FALSE(r.energy.has_value());
  CHECK_FALSE(r.iipb.has_value());
}

TEST_CASE("analysis is deterministic and seed-sensitive") {
  const Session session = gen_mixed(4).session;
  const Report a = analyze_session(session);
  const Report b = analyze_session(session);
  CHECK(a == b);
  CHECK(report_to_json(a) == report_to_json(b));

  // Bootstrap medians live on a grid of sample midpoints and the small
  // mixed families tie across seeds too readily, so the seed sweep runs on
  // the replica campaign whose 32-trial cycle family has a fine grid.
  const Session rep = gen_replica(7).session;
  std::set<std::pair<double, double>> distinct;
  std::optional<double> median;
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    AnalyzeOptions other;
    other.seed = seed;
    other.bootstrap_resamples = 400;
    const Report c = analyze_session(rep, other);
    const SummaryStat& st = c.nist->cycle[0].t_cycle_s;
    if (!median) median = st.median;
    CHECK(*median == st.median);
    distinct.insert({st.ci95.lo, st.ci95.hi});
  }
  CHECK(distinct.size() > 1);
}

TEST_CASE("JSON reports round-trip exactly") {
  for (std::uint64_t seed : {4u, 9u}) {
    const Report r = analyze_session(gen_mixed(seed).session);
    const std::string text = report_to_json(r);
    const Report back = report_from_json(text);
    CHECK(back == r);
    CHECK(report_to_json(back) == text);
  }
  // Partial families round-trip their nulls.
  const Report partial = analyze_session(gen_transfer(one_group()).session);
  CHECK(report_from_json(report_to_json(partial)) == partial);
}

TEST_CASE("report parsing rejects other schemas and junk") {
  const Report r = analyze_session(gen_transfer(one_group()).session);
  std::string text = report_to_json(r);
  CHECK_THROWS_AS(report_from_json("not json"), Error);
  const std::string other =
      text.replace(text.find("cegb-report-1"), 13, "cegb-report-9");
  try {
    report_from_json(other);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == errc::schema_version_unsupported);
  }
}

TEST_CASE("markdown table shapes are stable") {
  const std::string md = report_to_markdown(analyze_session(gen_replica(42).session));
  CHECK(md.find("# CEGB report: gripper-2f-adaptive on arm-6dof") != std::string::npos);
  CHECK(md.find("| Artifact | Grasp type | Median [s] | IQR [s] | 95% CI |") !=
        std::string::npos);
  CHECK(md.find("| 50 mm | pinch | 3.91 |") != std::string::npos);
  CHECK(md.find("| 80 mm | pinch | 3.23 |") != std::string::npos);
  CHECK(md.find("Profile code: 2S-P-B") != std::string::npos);
  CHECK(md.find("## Pick-and-place success\n\nnot measured") != std::string::npos);
  CHECK(md.find("standardized 10 s holding energy: 1.50 J") != std::string::npos);
}

TEST_CASE("markdown lists violations instead of metrics") {
  Session s = gen_mixed(4).session;
  s.manifest.platform_name.clear();
  const std::string md = report_to_markdown(analyze_session(s));
  CHECK(md.find("## Validation failures") != std::string::npos);
  CHECK(md.find("platform_name") != std::string::npos);
  CHECK(md.find("## Grasp cycle time") == std::string::npos);
}

TEST_CASE("comparison requires two reports of one schema") {
  const Report r = analyze_session(gen_mixed(4).session);
  CHECK_THROWS_AS(comparison_markdown(std::vector<Report>{r}), std::invalid_argument);

  Report other = r;
  other.meta.report_schema = "cegb-report-2";
  try {
    comparison_markdown(std::vector<Report>{r, other});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == errc::schema_mismatch);
  }
}

TEST_CASE("self-comparison shows identical columns") {
  const Report r = analyze_session(gen_replica(42).session);
  const std::string md = comparison_markdown(std::vector<Report>{r, r});
  CHECK(md.find("| 50 mm | 3.91 [") != std::string::npos);
  // Both columns carry the same header and the same values.
  const std::string col = "gripper-2f-adaptive @ arm-6dof";
  const std::size_t first = md.find(col);
  REQUIRE(first != std::string::npos);
  CHECK(md.find(col, first + col.size()) != std::string::npos);
}

TEST_CASE("comparison marks missing families and keeps input order") {
  const Report a = analyze_session(gen_transfer(one_group()).session);
  const Report b = analyze_session(gen_slip({}).session);
  const Report c = analyze_session(gen_energy({}).session);
  const std::string md = comparison_markdown(std::vector<Report>{a, b, c});
  CHECK(md.find("not measured") != std::string::npos);
  CHECK(md.find("## Slip resistance") != std::string::npos);
  // Input order fixes column order; all three sessions share the synthetic rig name,
  // so check the per-family gaps instead: transfer-only report has no slip data.
  const std::size_t slip_heading = md.find("## Slip resistance");
  const std::size_t slip_row = md.find("| 32 mm |", slip_heading);
  REQUIRE(slip_row != std::string::npos);
  const std::string row = md.substr(slip_row, md.find('\n', slip_row) - slip_row);
  CHECK(row.find("not measured |") < row.find("6.28"));
}

TEST_CASE("nist pools artifacts sharing a dimension") {
  SynthBundle bundle = gen_mixed(4);
  // Clone the 45 mm artifact under a second id with its own cycle trials.
  Session s = bundle.session;
  ArtifactSpec clone = s.artifacts.at("cyl-45");
  clone.id = "cyl-45-b";
  s.artifacts["cyl-45-b"] = clone;
  const std::size_t before_n = [&] {
    const Report r = analyze_session(s);
    for (const CycleSummary& c : r.nist->cycle) {
      if (c.dimension_mm == 45.0) return c.t_cycle_s.n;
    }
    return std::size_t{0};
  }();
  s.manifest.cycle_trials.push_back({"cyl-45-b", 1000.0, 1003.0});
  s.manifest.cycle_trials.push_back({"cyl-45-b", 1010.0, 1013.5});
  const Report r = analyze_session(s);
  for (const CycleSummary& c : r.nist->cycle) {
    if (c.dimension_mm == 45.0) CHECK(c.t_cycle_s.n == before_n + 2);
  }
}

} // TEST_SUITE
