#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <system_error>

namespace sdea {

/// Shortest round-trip decimal form, '.' separator, independent of the C locale.
inline std::string format_number(double value)
{
    char buffer[64];
    const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    if (ec != std::errc{}) {
        return "nan";
    }
    return std::string(buffer, end);
}

} // namespace sdea
