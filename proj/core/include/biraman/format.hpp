#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

namespace biraman {

// Every number written to CSV carries nine significant digits.
inline std::string fmt9(double v) {
    char buf[32];
    const int n = std::snprintf(buf, sizeof buf, "%.9g", v == 0.0 ? 0.0 : v);
    return std::string(buf, static_cast<std::size_t>(n));
}

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

// Parses a finite decimal; nullopt on trailing garbage, inf or nan.
inline std::optional<double> parse_finite(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
        return std::nullopt;
    }
    return v;
}

}  // namespace biraman
