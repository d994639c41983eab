#pragma once

#include <charconv>
#include <cstdio>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fedlab/error.hpp"

namespace fedlab::detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline double parse_plain_double(std::string_view s, std::string_view context) {
  s = trim(s);
  double value = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  if (!s.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (s.empty() || ec != std::errc{} || ptr != end) {
    throw ConfigError(std::string(context) + ": not a number: '" + std::string(s) + "'");
  }
  return value;
}

/// Decimal literal or a fraction `p/q`.
inline double parse_number(std::string_view s, std::string_view context) {
  s = trim(s);
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return parse_plain_double(s, context);
  const double num = parse_plain_double(s.substr(0, slash), context);
  const double den = parse_plain_double(s.substr(slash + 1), context);
  if (den == 0.0) throw ConfigError(std::string(context) + ": zero denominator");
  return num / den;
}

inline long long parse_integer(std::string_view s, std::string_view context) {
  s = trim(s);
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ConfigError(std::string(context) + ": not an integer: '" + std::string(s) + "'");
  }
  return value;
}

/// Shortest-safe round-trip form: 17 significant digits.
inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace fedlab::detail
