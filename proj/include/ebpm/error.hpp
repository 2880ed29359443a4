#pragma once

#include <stdexcept>
#include <string>

namespace ebpm {

/// Error categories shared between the C++ core and the C ABI.
enum class errc : int {
  ok = 0,
  invalid_argument = 1,
  zero_mass_below_cutoff = 2,
  unsupported_point = 3,
  empty_sample = 4,
  invalid_bounds = 5,
  support_mismatch = 6,
  no_progress = 7,
  non_finite_function = 8,
  insufficient_points = 9,
  io_error = 10,
  parse_error = 11,
};

const char* errc_name(errc code);

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool cond, errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

inline const char* errc_name(errc code) {
  switch (code) {
    case errc::ok: return "ok";
    case errc::invalid_argument: return "invalid_argument";
    case errc::zero_mass_below_cutoff: return "zero_mass_below_cutoff";
    case errc::unsupported_point: return "unsupported_point";
    case errc::empty_sample: return "empty_sample";
    case errc::invalid_bounds: return "invalid_bounds";
    case errc::support_mismatch: return "support_mismatch";
    case errc::no_progress: return "no_progress";
    case errc::non_finite_function: return "non_finite_function";
    case errc::insufficient_points: return "insufficient_points";
    case errc::io_error: return "io_error";
    case errc::parse_error: return "parse_error";
  }
  return "unknown";
}

}  // namespace ebpm
