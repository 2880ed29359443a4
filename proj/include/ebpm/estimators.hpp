#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace ebpm {

/// Frequency table of observed counts; the sufficient statistic for every
/// f-modeling estimator here.
struct SampleCounts {
  std::map<std::int64_t, std::int64_t> counts;  // only x with N(x) >= 1
  std::int64_t n = 0;
  std::int64_t x_max = 0;

  std::int64_t at(std::int64_t x) const {
    auto it = counts.find(x);
    return it == counts.end() ? 0 : it->second;
  }
};

SampleCounts tabulate(std::span<const std::int64_t> xs);

/// Nondecreasing nonnegative step function on Z+, constant at its last value
/// beyond x_max. Values are stored densely on [0, x_max].
class StepEstimator {
 public:
  explicit StepEstimator(std::vector<double> values);

  double operator()(std::int64_t x) const {
    if (x < 0) return values_.front();
    std::size_t i = static_cast<std::size_t>(x);
    return i < values_.size() ? values_[i] : values_.back();
  }

  std::int64_t x_max() const { return static_cast<std::int64_t>(values_.size()) - 1; }
  const std::vector<double>& values() const { return values_; }
  /// (x, value) pairs at which the function changes.
  std::vector<std::pair<std::int64_t, double>> breakpoints() const;

 private:
  std::vector<double> values_;
};

/// Unbiased method-of-moments estimate x(x-1)...(x-k+1) of theta^k.
double mom_estimate(std::int64_t x, int k);

/// Modified Robbins estimates (x+1)_k N(x+k)/N(x) on the observed support.
std::map<std::int64_t, double> robbins_fit(const SampleCounts& counts, int k);

/// Empirical surrogate risk (1/n) sum_x [N(x) t(x)^2 - 2 (x+1)_k N(x+k) t(x)].
double erm_objective(const SampleCounts& counts, int k, const StepEstimator& t);

/// Minimizer of erm_objective over nondecreasing nonnegative step functions,
/// via the weighted isotonic min-max rule
///   t(x) = max_{u<=x} min_{v>=x, D(u,v)>0} A(u,v) / D(u,v),
/// A(u,v) = sum_{i=u}^{v} (i+1)_k N(i+k), D(u,v) = sum_{i=u}^{v} N(i).
StepEstimator erm_fit(const SampleCounts& counts, int k);

/// ERM over the clipped monotone class; equals the pointwise clip of erm_fit.
StepEstimator erm_fit_clipped(const SampleCounts& counts, int k, double a, double b);

}  // namespace ebpm
