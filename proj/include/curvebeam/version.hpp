#pragma once

namespace curvebeam {

inline constexpr const char* tool_version = "1.0.0";

// Bumped whenever the report JSON layout changes incompatibly.
inline constexpr int report_schema_version = 1;

}  // namespace curvebeam
