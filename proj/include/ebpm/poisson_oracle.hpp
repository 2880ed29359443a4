#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ebpm/prior.hpp"

namespace ebpm {

/// Rising factorial x(x+1)...(x+m-1); the empty product is 1.
double pochhammer(double x, int m);

/// Falling factorial x(x-1)...(x-m+1).
double falling_factorial(double x, int m);

/// log f_pi(x) for the Poisson mixture f_pi(x) = int e^{-theta} theta^x / x! dpi.
/// Point masses use log-sum-exp, gamma/exponential the negative-binomial
/// closed form, uniform adaptive Gauss-Legendre quadrature.
double mixture_log_pmf(const Prior& prior, std::int64_t x);

double mixture_pmf(const Prior& prior, std::int64_t x);

/// Log pmf table up to the point where all but tail_tol of the mass is
/// covered. Immutable once built; queries past the stored range fall back to
/// direct evaluation.
class MixturePmfCache {
 public:
  explicit MixturePmfCache(Prior prior, double tail_tol = 1e-12);

  double log_pmf(std::int64_t x) const;
  double pmf(std::int64_t x) const;
  /// Smallest x* with sum_{x <= x*} f(x) >= 1 - tail_tol.
  std::int64_t cutoff() const { return cutoff_; }
  const Prior& prior() const { return prior_; }

 private:
  Prior prior_;
  std::vector<double> log_pmf_;
  std::int64_t cutoff_ = 0;
};

/// Posterior moment E[theta^k | X = x] via the Tweedie quotient
/// (x+1)_k f(x+k) / f(x).
double bayes_estimate(const Prior& prior, int k, std::int64_t x);
double bayes_estimate(const MixturePmfCache& cache, int k, std::int64_t x);

/// Bayes risk of the k-th moment functional:
/// E[theta^{2k}] - sum_x f(x) E[theta^k|x]^2, series truncated once the
/// remaining contribution is provably below 1e-10.
double mmse(const Prior& prior, int k);

struct TailCutoff {
  std::int64_t x0 = 0;
  PriorClassTag cls;
  std::int64_t n = 0;
};

/// Smallest class-uniform cutoff with P[X >= x0] <= 1/n. Bounded class: direct
/// search over the Chernoff bound (eh)^x e^{-h} / x^x; subexponential class:
/// x0 = ceil((s+1) log n).
TailCutoff tail_cutoff(const PriorClassTag& cls, std::int64_t n);

struct ChannelSample {
  std::vector<double> thetas;
  std::vector<std::int64_t> xs;
};

/// theta_i ~ prior, X_i | theta_i ~ Poisson(theta_i), deterministic in seed.
ChannelSample sample_channel(const Prior& prior, std::int64_t n, std::uint64_t seed);

/// E[f(theta) | X = x] for an arbitrary functional; exact sums for point
/// masses, adaptive quadrature otherwise.
double posterior_mean(const Prior& prior, const std::function<double(double)>& f, std::int64_t x);

/// Bayes risk E[f(theta)^2] - sum_x f_pi(x) E[f|x]^2 for a functional on a
/// bounded-support prior.
double mmse_functional(const Prior& prior, const std::function<double(double)>& f);

}  // namespace ebpm
