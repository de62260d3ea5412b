#pragma once

namespace fm {

inline constexpr const char* kToolName = "fractalmeter";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

}  // namespace fm
