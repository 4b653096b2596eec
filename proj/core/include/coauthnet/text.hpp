// Small string and number-formatting helpers shared across the toolkit.
// All formatting is locale-independent.
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace coauthnet {

inline constexpr std::string_view kVersion = "0.1.0";

std::string_view trim(std::string_view s);

std::string to_upper(std::string_view s);

// Splits on `sep`, trims each piece, keeps empty pieces out.
std::vector<std::string> split_trimmed(std::string_view s, char sep);

// Rounds half away from zero to `decimals` places.
double round_half_up(double value, int decimals);

// Fixed-point rendering, e.g. format_fixed(16.9, 1) == "16.9".
std::string format_fixed(double value, int decimals);

// Shortest representation that round-trips.
std::string format_double(double value);

// 64-bit FNV-1a, used for config fingerprints in reports.
std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

}  // namespace coauthnet
