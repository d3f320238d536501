#pragma once

#include <charconv>
#include <cstdio>
#include <string>
#include <system_error>

namespace nvpool {

/// Locale-independent full-precision rendering (17 significant digits),
/// used for CSV payloads so golden files are stable across platforms.
inline std::string format_full(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v,
                           std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

/// Human-facing scalar rendering: 12 significant digits, trailing ".0"
/// appended to integral values so `2` reads as `2.0`.
inline std::string format_scalar(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v,
                           std::chars_format::general, 12);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

/// Strict locale-independent parse of a full double token.
inline double parse_double(const std::string& s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

}  // namespace nvpool
