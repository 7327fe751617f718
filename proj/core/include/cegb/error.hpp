#pragma once

#include <stdexcept>
#include <string>

namespace cegb {

// Structured failure codes shared by every module. Each code maps 1:1 to a
// documented precondition or I/O failure; the CLI turns them into exit code 1.
enum class errc {
  empty_sample,
  non_monotonic_trace,
  window_out_of_range,
  trace_too_short,
  phase_inference_failed,
  inconsistent_override,
  unbalanced_attempts,
  negative_duration,
  trace_span_mismatch,
  zero_normal_force,
  missing_finger_length,
  missing_profile,
  zero_mass,
  missing_manifest,
  schema_version_unsupported,
  parse_error,
  unit_error,
  io_error,
  unknown_trace,
  schema_mismatch,
};

const char* errc_name(errc code) noexcept;

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& message);
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] void raise(errc code, const std::string& message);

} // namespace cegb
