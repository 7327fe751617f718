/// cegb: command line front end for the gripper benchmark toolkit.
///
/// Subcommands: validate, analyze, report, compare, simulate, timer,
/// plotdata. Exit codes: 0 success, 1 validation or data failure,
/// 2 usage error.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cegb/error.hpp"
#include "cegb/ingest.hpp"
#include "cegb/model.hpp"
#include "cegb/report.hpp"
#include "cegb/signal.hpp"
#include "cegb/synth.hpp"
#include "cegb/version.hpp"

namespace {

namespace fs = std::filesystem;
using namespace cegb;

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) raise(errc::io_error, out + ": cannot open for writing");
  f << text;
  f.flush();
  if (!f) raise(errc::io_error, out + ": write failed");
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) raise(errc::io_error, path + ": cannot open");
  std::ostringstream buf;
  buf << f.rdbuf();
  if (f.bad()) raise(errc::io_error, path + ": read failed");
  return buf.str();
}

int run_validate(const std::string& dir) {
  const Session session = load_session_raw(dir);
  const std::vector<Violation> violations = validate_session(session);
  if (violations.empty()) {
    std::cout << "OK: " << session.attempts.size() << " attempts, "
              << session.transfer_cycles.size() << " transfer cycles, " << session.traces.size()
              << " traces\n";
    return 0;
  }
  for (const Violation& v : violations) std::cout << v.record << ": " << v.invariant << "\n";
  return 1;
}

int run_analyze(const std::string& dir, const AnalyzeOptions& options, const std::string& format,
                const std::string& out) {
  const Session session = load_session_raw(dir);
  const Report report = analyze_session(session, options);
  emit(format == "md" ? report_to_markdown(report) : report_to_json(report), out);
  return report.violations.empty() ? 0 : 1;
}

int run_report(const std::string& path, const std::string& format, const std::string& out) {
  const Report report = report_from_json(read_file(path));
  emit(format == "md" ? report_to_markdown(report) : report_to_json(report), out);
  return 0;
}

int run_compare(const std::vector<std::string>& paths, const std::string& out) {
  std::vector<Report> reports;
  reports.reserve(paths.size());
  for (const std::string& p : paths) reports.push_back(report_from_json(read_file(p)));
  emit(comparison_markdown(reports), out);
  return 0;
}

int run_simulate(const std::string& family, const std::string& out_dir, std::uint64_t seed) {
  SynthBundle bundle;
  if (family == "replica") {
    bundle = gen_replica(seed);
  } else if (family == "mixed") {
    bundle = gen_mixed(seed);
  } else if (family == "ycb") {
    YcbGenConfig cfg;
    cfg.p_table = {{"obj-a", {0.9, 0.6}}, {"obj-b", {0.8, 0.4}}, {"obj-c", {1.0, 0.2}}};
    cfg.seed = seed;
    bundle = gen_ycb(cfg);
  } else if (family == "energy") {
    EnergyGenConfig cfg;
    cfg.trials = 5;
    cfg.seed = seed;
    bundle = gen_energy(cfg);
  } else if (family == "slip") {
    SlipGenConfig cfg;
    cfg.trials = 10;
    cfg.dispersion_n = 0.3;
    cfg.seed = seed;
    bundle = gen_slip(cfg);
  } else {
    TransferGenConfig cfg;
    cfg.groups = {{"bachelor", 16.1, 1.2, 12}, {"untrained colleague", 22.8, 2.0, 11}};
    cfg.seed = seed;
    bundle = gen_transfer(cfg);
  }
  write_bundle(bundle, out_dir);
  std::cout << "wrote " << family << " bundle (seed " << seed << ") to " << out_dir << "\n";
  return 0;
}

// Reads one line; returns false on end of input. A lone 'a' aborts.
bool prompt_line(const std::string& prompt, std::string& line) {
  std::cout << prompt << std::flush;
  return static_cast<bool>(std::getline(std::cin, line));
}

int run_timer(const std::string& group, const std::string& participant, const std::string& out) {
  using clock = std::chrono::steady_clock;
  std::string line;

  if (!prompt_line("Press ENTER to start the transfer timer (a + ENTER aborts): ", line) ||
      line == "a") {
    std::cout << "aborted, no row written\n";
    return 0;
  }
  const clock::time_point t0 = clock::now();

  if (!prompt_line("Timer running. Press ENTER when the gripper is fully reattached "
                   "(a + ENTER aborts): ",
                   line) ||
      line == "a") {
    std::cout << "aborted, no row written\n";
    return 0;
  }
  const double duration_s = std::chrono::duration<double>(clock::now() - t0).count();

  bool fault_mech = false, fault_elec = false, fault_sw = false;
  if (prompt_line("Fault marks, any of m/e/s (ENTER for none): ", line)) {
    for (char c : line) {
      switch (c) {
        case 'm': case 'M': fault_mech = true; break;
        case 'e': case 'E': fault_elec = true; break;
        case 's': case 'S': fault_sw = true; break;
        case ' ': case ',': break;
        default:
          std::cerr << "warning: ignoring unknown fault mark '" << c << "'\n";
      }
    }
  }

  TransferCycle cycle;
  cycle.participant_id = participant;
  cycle.group = ParticipantGroup::from_label(group);
  cycle.duration_s = duration_s;
  cycle.fault_mechanical = fault_mech;
  cycle.fault_electrical = fault_elec;
  cycle.fault_software = fault_sw;
  append_transfer_cycle(out, cycle);

  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", duration_s);
  std::cout << "recorded " << buf << " s for " << participant << " (" << cycle.group.label
            << "), faults m=" << fault_mech << " e=" << fault_elec << " s=" << fault_sw << "\n";
  return 0;
}

int run_plotdata(const std::string& dir, const std::string& trace_id, double smoothing_s,
                 const std::string& out) {
  const Session session = load_session_raw(dir);
  const auto it = session.traces.find(trace_id);
  if (it == session.traces.end()) {
    raise(errc::unknown_trace, "trace '" + trace_id + "' is not in the session manifest");
  }
  const SampledTrace& trace = it->second;
  if (trace.kind != TraceKind::Power && trace.kind != TraceKind::VoltageCurrent) {
    raise(errc::unit_error, "trace '" + trace_id + "' is not a power trace");
  }

  const SampledTrace smoothed = smooth(trace, smoothing_s);
  std::vector<PhaseMark> marks;
  try {
    marks = segment_phases(trace, trace.phase_marks, smoothing_s);
  } catch (const Error& e) {
    if (e.code() != errc::phase_inference_failed) throw;
    std::cerr << "warning: " << e.what() << "; phase column set to \"unknown\"\n";
  }

  std::string csv = "t_s,p_W_raw,p_W_smooth,phase\n";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const double t = trace.samples[i].t_s;
    std::string phase = "unknown";
    for (const PhaseMark& m : marks) {
      if (t >= m.t_start_s && t <= m.t_end_s) {
        phase = to_code(m.phase);
        break;
      }
    }
    csv += format_double(t) + "," + format_double(trace.value_at(i)) + "," +
           format_double(smoothed.value_at(i)) + "," + phase + "\n";
  }
  emit(csv, out);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cross-embodiment gripper benchmark toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  int rc = 0;

  struct CommonState {
    std::uint64_t seed = 42;
    std::size_t bootstrap = 2000;
    std::string format;
    std::string out;
  };
  auto add_seed = [](CLI::App* cmd, const std::shared_ptr<CommonState>& st) {
    cmd->add_option("--seed", st->seed, "RNG seed")->envname("CEGB_SEED")->capture_default_str();
  };
  auto add_out = [](CLI::App* cmd, const std::shared_ptr<CommonState>& st) {
    cmd->add_option("--out", st->out, "output path (default: stdout)");
  };
  auto add_format = [](CLI::App* cmd, const std::shared_ptr<CommonState>& st, const char* def) {
    st->format = def;
    cmd->add_option("--format", st->format, "output format")
        ->check(CLI::IsMember({"json", "md"}))
        ->capture_default_str();
  };

  {
    CLI::App* cmd = app.add_subcommand("validate", "Check a session bundle against the schema");
    auto dir = std::make_shared<std::string>();
    cmd->add_option("session_dir", *dir, "session bundle directory")->required();
    cmd->callback([&rc, dir] { rc = run_validate(*dir); });
  }

  {
    CLI::App* cmd = app.add_subcommand("analyze", "Compute every metric family with data");
    auto dir = std::make_shared<std::string>();
    auto st = std::make_shared<CommonState>();
    cmd->add_option("session_dir", *dir, "session bundle directory")->required();
    add_seed(cmd, st);
    cmd->add_option("--bootstrap", st->bootstrap, "bootstrap resamples")->capture_default_str();
    add_format(cmd, st, "json");
    add_out(cmd, st);
    cmd->callback([&rc, dir, st] {
      AnalyzeOptions options;
      options.seed = st->seed;
      options.bootstrap_resamples = st->bootstrap;
      rc = run_analyze(*dir, options, st->format, st->out);
    });
  }

  {
    CLI::App* cmd = app.add_subcommand("report", "Render a stored JSON report");
    auto path = std::make_shared<std::string>();
    auto st = std::make_shared<CommonState>();
    cmd->add_option("report_json", *path, "report JSON file")->required();
    add_format(cmd, st, "md");
    add_out(cmd, st);
    cmd->callback([&rc, path, st] { rc = run_report(*path, st->format, st->out); });
  }

  {
    CLI::App* cmd = app.add_subcommand("compare", "Side-by-side Markdown for 2+ reports");
    auto paths = std::make_shared<std::vector<std::string>>();
    auto st = std::make_shared<CommonState>();
    cmd->add_option("reports", *paths, "report JSON files")->required()->expected(2, -1);
    add_out(cmd, st);
    cmd->callback([&rc, paths, st] { rc = run_compare(*paths, st->out); });
  }

  {
    CLI::App* cmd = app.add_subcommand("simulate", "Write a synthetic session bundle");
    auto family = std::make_shared<std::string>("replica");
    auto out_dir = std::make_shared<std::string>();
    auto st = std::make_shared<CommonState>();
    cmd->add_option("--family", *family, "generator family")
        ->check(CLI::IsMember({"replica", "mixed", "ycb", "energy", "slip", "transfer"}))
        ->capture_default_str();
    cmd->add_flag_callback(
        "--replica", [family] { *family = "replica"; }, "shorthand for --family replica");
    cmd->add_option("--out-dir", *out_dir, "bundle output directory")->required();
    add_seed(cmd, st);
    cmd->callback([&rc, family, out_dir, st] { rc = run_simulate(*family, *out_dir, st->seed); });
  }

  {
    CLI::App* cmd = app.add_subcommand("timer", "Time a transfer cycle interactively");
    auto group = std::make_shared<std::string>();
    auto participant = std::make_shared<std::string>();
    auto csv = std::make_shared<std::string>("transfers.csv");
    cmd->add_option("--group", *group, "participant group label")->required();
    cmd->add_option("--participant", *participant, "participant id")->required();
    cmd->add_option("--out", *csv, "transfers.csv to append to")->capture_default_str();
    cmd->callback([&rc, group, participant, csv] { rc = run_timer(*group, *participant, *csv); });
  }

  {
    CLI::App* cmd = app.add_subcommand("plotdata", "CSV of a power trace with phase labels");
    auto dir = std::make_shared<std::string>();
    auto trace = std::make_shared<std::string>();
    auto smoothing = std::make_shared<double>(0.05);
    auto st = std::make_shared<CommonState>();
    cmd->add_option("session_dir", *dir, "session bundle directory")->required();
    cmd->add_option("--trace", *trace, "trace id")->required();
    cmd->add_option("--smoothing", *smoothing, "smoothing window [s]")->capture_default_str();
    add_out(cmd, st);
    cmd->callback([&rc, dir, trace, smoothing, st] {
      rc = run_plotdata(*dir, *trace, *smoothing, st->out);
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const Error& e) {
    std::cerr << "cegb: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "cegb: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
