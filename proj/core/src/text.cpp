#include "coauthnet/text.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace coauthnet {

std::string_view trim(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r' || s[b] == '\n')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r' || s[e - 1] == '\n')) --e;
  return s.substr(b, e - b);
}

std::string to_upper(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) out.push_back(c >= 'a' && c <= 'z' ? static_cast<char>(c - 'a' + 'A') : c);
  return out;
}

std::vector<std::string> split_trimmed(std::string_view s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start <= s.size()) {
    size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) pos = s.size();
    std::string_view piece = trim(s.substr(start, pos - start));
    if (!piece.empty()) out.emplace_back(piece);
    start = pos + 1;
    if (pos == s.size()) break;
  }
  return out;
}

double round_half_up(double value, int decimals) {
  double scale = std::pow(10.0, decimals);
  double scaled = value * scale;
  double rounded = scaled >= 0 ? std::floor(scaled + 0.5) : std::ceil(scaled - 0.5);
  return rounded / scale;
}

std::string format_fixed(double value, int decimals) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, decimals);
  if (res.ec != std::errc{}) throw std::runtime_error("format_fixed: value out of range");
  return std::string(buf, res.ptr);
}

std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  if (res.ec != std::errc{}) throw std::runtime_error("format_double: value out of range");
  return std::string(buf, res.ptr);
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t h = fnv1a64(bytes);
  char buf[17];
  static const char* digits = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = digits[h & 0xF];
    h >>= 4;
  }
  buf[16] = '\0';
  return std::string(buf, 16);
}

}  // namespace coauthnet
