#include "cegb/error.hpp"

namespace cegb {

const char* errc_name(errc code) noexcept {
  switch (code) {
    case errc::empty_sample: return "EmptySample";
    case errc::non_monotonic_trace: return "NonMonotonicTrace";
    case errc::window_out_of_range: return "WindowOutOfRange";
    case errc::trace_too_short: return "TraceTooShort";
    case errc::phase_inference_failed: return "PhaseInferenceFailed";
    case errc::inconsistent_override: return "InconsistentOverride";
    case errc::unbalanced_attempts: return "UnbalancedAttempts";
    case errc::negative_duration: return "NegativeDuration";
    case errc::trace_span_mismatch: return "TraceSpanMismatch";
    case errc::zero_normal_force: return "ZeroNormalForce";
    case errc::missing_finger_length: return "MissingFingerLength";
    case errc::missing_profile: return "MissingProfile";
    case errc::zero_mass: return "ZeroMass";
    case errc::missing_manifest: return "MissingManifest";
    case errc::schema_version_unsupported: return "SchemaVersionUnsupported";
    case errc::parse_error: return "ParseError";
    case errc::unit_error: return "UnitError";
    case errc::io_error: return "IoError";
    case errc::unknown_trace: return "UnknownTrace";
    case errc::schema_mismatch: return "SchemaMismatch";
  }
  return "UnknownError";
}

Error::Error(errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

void raise(errc code, const std::string& message) { throw Error(code, message); }

} // namespace cegb
