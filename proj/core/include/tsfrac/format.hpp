#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace tsfrac {

/// Shortest decimal text that parses back to the same binary64 value.
/// Locale independent.
inline std::string format_double(double x) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, end);
}

} // namespace tsfrac
