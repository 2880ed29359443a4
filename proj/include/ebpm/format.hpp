#pragma once

#include <charconv>
#include <string>
#include <system_error>

#include "ebpm/error.hpp"

namespace ebpm {

/// Shortest decimal string that round-trips the double exactly.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s) {
  double v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  require(res.ec == std::errc() && res.ptr == s.data() + s.size(), errc::parse_error,
          "bad numeric field: '" + s + "'");
  return v;
}

inline std::int64_t parse_int(const std::string& s) {
  std::int64_t v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  require(res.ec == std::errc() && res.ptr == s.data() + s.size(), errc::parse_error,
          "bad integer field: '" + s + "'");
  return v;
}

}  // namespace ebpm
