#pragma once

/// Session bundle I/O. A bundle is a directory:
///
///   session.json            manifest: metadata, profile, artifacts, trial index
///   attempts.csv            grasp attempts (optional)
///   transfers.csv           transfer cycles (optional)
///   traces/<id>.csv         sampled traces, one file per trace
///   traces/<id>.phases.csv  optional phase-mark sidecar
///
/// Loading is all-or-nothing: any malformed record raises a structured
/// error naming the file and line, and nothing partial is returned.
/// write_session followed by load_session reproduces the session exactly
/// (doubles are written in shortest round-trip form).

#include <filesystem>
#include <string>

#include "cegb/model.hpp"

namespace cegb {

// Load and validate. A bundle whose content violates model invariants is
// rejected (the message lists the first violations).
Session load_session(const std::filesystem::path& dir);

// Load without the validation gate; used to report violations.
Session load_session_raw(const std::filesystem::path& dir);

void write_session(const Session& session, const std::filesystem::path& dir);

// Append one cycle to a transfers.csv, creating it (with header) if needed.
void append_transfer_cycle(const std::filesystem::path& csv, const TransferCycle& cycle);

// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double v);

} // namespace cegb
