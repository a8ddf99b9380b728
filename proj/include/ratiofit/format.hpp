#pragma once

#include <charconv>
#include <string>

namespace ratiofit {

/// Shortest decimal that parses back to exactly the same double.
inline std::string format_number(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

}  // namespace ratiofit
