#pragma once

#include <charconv>
#include <cstdio>
#include <string>

namespace drillvol {

/// %.{significant}g, locale-independent for the "C" locale the tools use.
inline std::string format_number(double x, int significant = 12) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant, x);
  return buf;
}

/// Shortest text that parses back to exactly x.
inline std::string format_exact(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace drillvol
