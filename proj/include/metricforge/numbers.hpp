#pragma once

#include <charconv>
#include <cmath>
#include <string>

namespace metricforge {

/// Shortest decimal string that parses back to exactly `value`.
inline std::string format_number(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (std::isnan(value)) return "nan";
    char buffer[64];
    auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, end);
}

/// a <= b up to relative tolerance on b.
inline bool leq_tol(double a, double b, double tol) {
    return a <= b + tol * std::abs(b);
}

} // namespace metricforge
