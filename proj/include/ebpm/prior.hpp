#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ebpm {

struct Atom {
  double theta = 0;
  double weight = 0;
};

/// A mixing distribution on theta >= 0. Discrete grids produced by truncation
/// are represented as point masses, so every variant stays closed under the
/// operations downstream code needs (pmf, moments, sampling).
class Prior {
 public:
  enum class Kind { point_masses, uniform, gamma, exponential };

  static Prior point_masses(std::vector<Atom> atoms);
  static Prior uniform(double lo, double hi);
  static Prior gamma(double shape, double rate);
  static Prior exponential(double scale);

  Kind kind() const { return kind_; }
  const std::vector<Atom>& atoms() const;  // point_masses only
  double lo() const;                       // uniform
  double hi() const;                       // uniform
  double shape() const;                    // gamma
  double rate() const;                     // gamma
  double scale() const;                    // exponential

  bool bounded() const;
  /// Supremum of the support; +inf for gamma/exponential.
  double support_max() const;

  double pdf(double theta) const;  // density variants only

 private:
  Prior() = default;
  Kind kind_ = Kind::point_masses;
  std::vector<Atom> atoms_;
  double a_ = 0;  // uniform lo / gamma shape / exponential scale
  double b_ = 0;  // uniform hi / gamma rate
};

/// Tag for the prior classes the tail machinery is parametrized by:
/// bounded support [0, h] or subexponential tails with parameter s.
struct PriorClassTag {
  enum class Kind { bounded, sub_exponential };
  Kind kind = Kind::bounded;
  double param = 1.0;  // h or s

  static PriorClassTag bounded(double h);
  static PriorClassTag sub_exponential(double s);
};

std::vector<double> sample_theta(const Prior& prior, std::int64_t n, std::uint64_t seed);

/// E[theta^p], exact for every variant.
double prior_moment(const Prior& prior, int p);

/// Conditional distribution given theta <= h. Exact for point masses and
/// uniform; gamma/exponential are discretized on a 2048-atom midpoint grid.
Prior truncate(const Prior& prior, double h);

/// P(theta > t).
double tail_prob(const Prior& prior, double t);

Prior prior_from_json(const std::string& text);
std::string prior_to_json(const Prior& prior);

/// Class tag a prior naturally belongs to: bounded(support_max) when the
/// support is bounded, otherwise sub_exponential with a scale that makes the
/// 2e^{-t/s} tail bound hold.
PriorClassTag prior_class_tag(const Prior& prior);

}  // namespace ebpm
