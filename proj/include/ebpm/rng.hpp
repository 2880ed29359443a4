#pragma once

#include <cstdint>
#include <string_view>

namespace ebpm {

/// Counter-based generator (splitmix64). The whole stream is a pure function
/// of the seed, so replicates can derive independent streams by hashing their
/// coordinates into a seed and never share hidden state.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  /// Exponential with the given scale (mean).
  double exponential(double scale);

  /// Standard normal via Box-Muller (two uniforms per draw, no cached spare).
  double normal();

  /// Gamma(shape, rate) by Marsaglia-Tsang.
  double gamma(double shape, double rate);

  std::int64_t poisson(double mean);

 private:
  std::uint64_t state_;
};

/// FNV-1a over an arbitrary byte string; used to derive replicate seeds.
std::uint64_t hash_bytes(std::uint64_t seed, std::string_view bytes);
std::uint64_t hash_u64(std::uint64_t seed, std::uint64_t value);

}  // namespace ebpm
