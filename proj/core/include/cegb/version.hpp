#pragma once

#include <string_view>

namespace cegb {

inline constexpr std::string_view kToolVersion = "0.1.0";

// Version tag of the on-disk session bundle layout (session.json, csv files).
inline constexpr std::string_view kSchemaVersion = "cegb-1";

// Version tag of the serialized report document.
inline constexpr std::string_view kReportSchemaVersion = "cegb-report-1";

} // namespace cegb
