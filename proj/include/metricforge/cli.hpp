#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace metricforge {

inline constexpr const char* kToolName = "metricforge";
inline constexpr const char* kToolVersion = "0.1.0";

/// Runs one CLI command. `args` excludes the program name. Writes the JSON
/// report (or JSON error object) to `out` and usage text to `err`.
/// Returns 0 on success, 1 on domain errors or failed --expect-pass, 2 on
/// usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace metricforge
