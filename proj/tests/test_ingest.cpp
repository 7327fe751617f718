#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "cegb/error.hpp"
#include "cegb/ingest.hpp"
#include "cegb/synth.hpp"

using namespace cegb;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("cegb-ingest-" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>());
}

void spit(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  f << text;
}

// Smallest manifest that loads: one free force trace.
void write_minimal_bundle(const fs::path& dir) {
  spit(dir / "session.json", R"({
  "schema_version": "cegb-1",
  "gripper_name": "g",
  "platform_name": "p",
  "traces": [{"id": "t1"}]
})");
  spit(dir / "traces/t1.csv", "t_s,f_N\n0,1\n0.1,2\n");
}

} // namespace

TEST_SUITE("ingest") {

TEST_CASE("write and load reproduce a session exactly") {
  const TempDir tmp;
  for (std::uint64_t seed : {3u, 11u, 42u}) {
    const SynthBundle bundle = gen_mixed(seed);
    write_session(bundle.session, tmp.path);
    CHECK(load_session(tmp.path) == bundle.session);
  }
}

TEST_CASE("writing twice produces identical bytes") {
  const TempDir a, b;
  const SynthBundle bundle = gen_replica(42);
  write_session(bundle.session, a.path);
  write_session(bundle.session, b.path);
  CHECK(slurp(a.path / "session.json") == slurp(b.path / "session.json"));
  CHECK(slurp(a.path / "transfers.csv") == slurp(b.path / "transfers.csv"));
  CHECK(slurp(a.path / "traces/energy-t01.csv") == slurp(b.path / "traces/energy-t01.csv"));
}

TEST_CASE("rewriting a smaller session removes stale files") {
  const TempDir tmp;
  write_session(gen_mixed(5).session, tmp.path); // has attempts + transfers
  Session bare = gen_mixed(5).session;
  bare.attempts.clear();
  bare.transfer_cycles.clear();
  write_session(bare, tmp.path);
  CHECK_FALSE(fs::exists(tmp.path / "attempts.csv"));
  CHECK_FALSE(fs::exists(tmp.path / "transfers.csv"));
  CHECK(load_session_raw(tmp.path) == bare);
}

TEST_CASE("a missing manifest is its own error") {
  const TempDir tmp;
  try {
    load_session_raw(tmp.path);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == errc::missing_manifest);
  }
}

TEST_CASE("unsupported schema versions are rejected") {
  const TempDir tmp;
  write_minimal_bundle(tmp.path);
  spit(tmp.path / "session.json",
       R"({"schema_version": "cegb-0", "gripper_name": "g", "platform_name": "p"})");
  try {
    load_session_raw(tmp.path);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == errc::schema_version_unsupported);
  }
}

TEST_CASE("a manifest that is not JSON reports a parse error") {
  const TempDir tmp;
  spit(tmp.path / "session.json", "{nope");
  try {
    load_session_raw(tmp.path);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == errc::parse_error);
  }
}

TEST_CASE("a referenced trace file must exist") {
  const TempDir tmp;
  write_minimal_bundle(tmp.path);
  fs::remove(tmp.path / "traces/t1.csv");
  try {
    load_session_raw(tmp.path);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == errc::io_error);
  }
}

TEST_CASE("trace headers fix the unit of each column") {
  const TempDir tmp;
  write_minimal_bundle(tmp.path);
  spit(tmp.path / "traces/t1.csv", "t_s,kPa\n0,1\n");
  try {
    load_session_raw(tmp.path);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == errc::unit_error);
    CHECK(std::string(e.what()).find("t_s,p_W") != std::string::npos); // lists valid headers
  }
}

TEST_CASE("malformed numbers name the file and line") {
  const TempDir tmp;
  write_minimal_bundle(tmp.path);
  spit(tmp.path / "traces/t1.csv", "t_s,f_N\n0,1\n0.2,abc\n");
  try {
    load_session_raw(tmp.path);
    FAIL("expected an error");
  } catch (const Error& e) {
    const std::string what = e.what();
    CHECK(what.find("t1.csv:3") != std::string::npos);
  }
}

TEST_CASE("blank lines and CRLF endings are tolerated") {
  const TempDir tmp;
  write_minimal_bundle(tmp.path);
  spit(tmp.path / "traces/t1.csv", "t_s,f_N\r\n\r\n0,1\r\n\r\n0.1,2\r\n");
  const Session s = load_session_raw(tmp.path);
  REQUIRE(s.traces.at("t1").size() == 2);
  CHECK(s.traces.at("t1").samples[1].v0 == 2.0);
}

TEST_CASE("voltage-current traces carry two value columns") {
  const TempDir tmp;
  write_minimal_bundle(tmp.path);
  spit(tmp.path / "traces/t1.csv", "t_s,u_V,i_A\n0,24,0.5\n0.1,24,0.6\n");
  const Session s = load_session_raw(tmp.path);
  CHECK(s.traces.at("t1").kind == TraceKind::VoltageCurrent);
  CHECK(s.traces.at("t1").value_at(1) == doctest::Approx(14.4));
}

TEST_CASE("attempts with empty optional cells load as missing events") {
  const TempDir tmp;
  write_minimal_bundle(tmp.path);
  spit(tmp.path / "attempts.csv",
       "object_id,pose_index,attempt_index,t_grasp_cmd_s,t_lift5cm_s,hold_duration_s,slip,"
       "t_release_done_s,outcome_override\n"
       "apple,1,1,0,1.2,3.5,0,5.0,\n"
       "apple,1,2,20,,,0,,failure\n");
  const Session s = load_session_raw(tmp.path);
  REQUIRE(s.attempts.size() == 2);
  CHECK(s.attempts[0].events.t_lift_5cm_s == 1.2);
  CHECK_FALSE(s.attempts[0].outcome_override.has_value());
  CHECK_FALSE(s.attempts[1].events.t_lift_5cm_s.has_value());
  CHECK(s.attempts[1].outcome_override == Outcome::Failure);
}

TEST_CASE("phase sidecars attach to their trace") {
  const TempDir tmp;
  write_minimal_bundle(tmp.path);
  spit(tmp.path / "traces/t1.phases.csv", "phase,t_start_s,t_end_s\ngrasp,0,0.05\nhold,0.05,0.1\n");
  const Session s = load_session_raw(tmp.path);
  REQUIRE(s.traces.at("t1").phase_marks.size() == 2);
  CHECK(s.traces.at("t1").phase_marks[1].phase == Phase::Hold);

  spit(tmp.path / "traces/t1.phases.csv", "phase,t_start_s,t_end_s\nwiggle,0,0.05\n");
  CHECK_THROWS_AS(load_session_raw(tmp.path), Error);
}

TEST_CASE("load_session rejects sessions with violations") {
  const TempDir tmp;
  write_minimal_bundle(tmp.path);
  spit(tmp.path / "traces/t1.csv", "t_s,f_N\n0,1\n0,2\n"); // repeated timestamp
  CHECK(load_session_raw(tmp.path).traces.size() == 1);    // raw load still works
  try {
    load_session(tmp.path);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == errc::parse_error);
    CHECK(std::string(e.what()).find("strictly increasing") != std::string::npos);
  }
}

TEST_CASE("transfer rows append with a single header") {
  const TempDir tmp;
  const fs::path csv = tmp.path / "transfers.csv";
  TransferCycle c;
  c.participant_id = "p01";
  c.group = ParticipantGroup::from_label("bachelor");
  c.duration_s = 17.6;
  append_transfer_cycle(csv, c);
  c.participant_id = "p02";
  c.fault_software = true;
  append_transfer_cycle(csv, c);
  const std::string text = slurp(csv);
  CHECK(text == "participant_id,group,duration_s,fault_mech,fault_elec,fault_sw\n"
                "p01,bachelor,17.6,0,0,0\n"
                "p02,bachelor,17.6,0,0,1\n");
}

TEST_CASE("format_double round-trips through parsing") {
  const TempDir tmp;
  for (double v : {0.1, 1.0 / 3.0, -2.5e-9, 3.91, 123456.789, 0.0}) {
    write_minimal_bundle(tmp.path);
    spit(tmp.path / "traces/t1.csv", "t_s,f_N\n0," + format_double(v) + "\n1,0\n");
    CHECK(load_session_raw(tmp.path).traces.at("t1").samples[0].v0 == v);
  }
}

TEST_CASE("unknown manifest keys are ignored for forward compatibility") {
  const TempDir tmp;
  write_minimal_bundle(tmp.path);
  spit(tmp.path / "session.json", R"({
  "schema_version": "cegb-1",
  "gripper_name": "g",
  "platform_name": "p",
  "future_field": {"x": 1},
  "traces": [{"id": "t1", "whatever": true}]
})");
  CHECK(load_session_raw(tmp.path).traces.count("t1") == 1);
}

} // TEST_SUITE
