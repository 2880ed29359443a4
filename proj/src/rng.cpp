#include "ebpm/rng.hpp"

#include <cmath>

#include "ebpm/error.hpp"

namespace ebpm {

double Rng::exponential(double scale) {
  require(scale > 0, errc::invalid_argument, "exponential scale must be > 0");
  return -scale * std::log1p(-next_double());
}

double Rng::normal() {
  // next_double() is in [0,1); shift to (0,1] before the log.
  double u1 = 1.0 - next_double();
  double u2 = next_double();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

double Rng::gamma(double shape, double rate) {
  require(shape > 0 && rate > 0, errc::invalid_argument, "gamma shape and rate must be > 0");
  if (shape < 1.0) {
    // Boost to shape+1 and scale back down.
    double u = 1.0 - next_double();
    return gamma(shape + 1.0, rate) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = normal();
    double v = 1.0 + c * x;
    if (v <= 0) continue;
    v = v * v * v;
    double u = 1.0 - next_double();
    if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) {
      return d * v / rate;
    }
  }
}

std::int64_t Rng::poisson(double mean) {
  require(mean >= 0 && std::isfinite(mean), errc::invalid_argument,
          "poisson mean must be finite and >= 0");
  if (mean == 0) return 0;
  if (mean < 10.0) {
    // Knuth's product-of-uniforms method.
    const double limit = std::exp(-mean);
    std::int64_t k = 0;
    double prod = next_double();
    while (prod > limit) {
      ++k;
      prod *= next_double();
    }
    return k;
  }
  // Hormann's PTRS transformed rejection for large means.
  const double b = 0.931 + 2.53 * std::sqrt(mean);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_mean = std::log(mean);
  for (;;) {
    double u = next_double() - 0.5;
    double v = next_double();
    double us = 0.5 - std::fabs(u);
    double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<std::int64_t>(kf);
    if (kf < 0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        kf * log_mean - mean - std::lgamma(kf + 1.0)) {
      return static_cast<std::int64_t>(kf);
    }
  }
}

std::uint64_t hash_u64(std::uint64_t seed, std::uint64_t value) {
  std::uint64_t z = seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t hash_bytes(std::uint64_t seed, std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ULL ^ seed;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return hash_u64(h, seed);
}

}  // namespace ebpm
