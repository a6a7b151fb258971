#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>
#include <string_view>
#include <system_error>

#include "wwr/error.hpp"

namespace wwr {

// Rounding convention used for every float-to-integer conversion in this
// library: round half up (0.5 -> 1, -0.5 -> 0).
inline int iround_half_up(double v) {
  return static_cast<int>(std::floor(v + 0.5));
}

inline long lround_half_up(double v) {
  return static_cast<long>(std::floor(v + 0.5));
}

// Clamps a pixel index to [0, n-1].
inline int clamp_index(int i, int n) {
  return i < 0 ? 0 : (i >= n ? n - 1 : i);
}

// Shortest decimal string that parses back to exactly the same double.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ParseError("not a number: \"" + std::string(s) + "\"");
  }
  return v;
}

inline std::string to_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace wwr
