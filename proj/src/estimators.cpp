#include "ebpm/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ebpm/error.hpp"
#include "ebpm/poisson_oracle.hpp"

namespace ebpm {

SampleCounts tabulate(std::span<const std::int64_t> xs) {
  if (xs.empty()) fail(errc::empty_sample, "tabulate requires a nonempty sample");
  SampleCounts out;
  for (auto x : xs) {
    require(x >= 0, errc::invalid_argument, "counts must be nonnegative integers");
    ++out.counts[x];
  }
  out.n = static_cast<std::int64_t>(xs.size());
  out.x_max = out.counts.rbegin()->first;
  return out;
}

StepEstimator::StepEstimator(std::vector<double> values) : values_(std::move(values)) {
  require(!values_.empty(), errc::invalid_argument, "StepEstimator requires at least one value");
  double prev = 0.0;
  for (double& v : values_) {
    require(std::isfinite(v), errc::invalid_argument, "StepEstimator values must be finite");
    require(v >= prev - 1e-9 * std::max(1.0, std::fabs(prev)), errc::invalid_argument,
            "StepEstimator values must be nondecreasing and nonnegative");
    v = std::max(v, prev);  // absorb roundoff-level inversions
    prev = v;
  }
}

std::vector<std::pair<std::int64_t, double>> StepEstimator::breakpoints() const {
  std::vector<std::pair<std::int64_t, double>> bp;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i == 0 || values_[i] != values_[i - 1]) {
      bp.emplace_back(static_cast<std::int64_t>(i), values_[i]);
    }
  }
  return bp;
}

double mom_estimate(std::int64_t x, int k) {
  require(k >= 1, errc::invalid_argument, "mom_estimate requires k >= 1");
  require(x >= 0, errc::invalid_argument, "mom_estimate requires x >= 0");
  if (x < k) return 0.0;
  return falling_factorial(static_cast<double>(x), k);
}

std::map<std::int64_t, double> robbins_fit(const SampleCounts& counts, int k) {
  require(k >= 1, errc::invalid_argument, "robbins_fit requires k >= 1");
  if (counts.counts.empty()) fail(errc::empty_sample, "robbins_fit requires a nonempty sample");
  std::map<std::int64_t, double> out;
  for (const auto& [x, nx] : counts.counts) {
    double num = pochhammer(static_cast<double>(x) + 1.0, k) *
                 static_cast<double>(counts.at(x + k));
    out[x] = num / static_cast<double>(nx);
  }
  return out;
}

double erm_objective(const SampleCounts& counts, int k, const StepEstimator& t) {
  require(k >= 1, errc::invalid_argument, "erm_objective requires k >= 1");
  if (counts.counts.empty()) return 0.0;
  double acc = 0;
  for (std::int64_t x = 0; x <= counts.x_max; ++x) {
    double nx = static_cast<double>(counts.at(x));
    double a = pochhammer(static_cast<double>(x) + 1.0, k) *
               static_cast<double>(counts.at(x + k));
    if (nx == 0 && a == 0) continue;
    double tx = t(x);
    acc += nx * tx * tx - 2.0 * a * tx;
  }
  return acc / static_cast<double>(counts.n);
}

StepEstimator erm_fit(const SampleCounts& counts, int k) {
  require(k >= 1, errc::invalid_argument, "erm_fit requires k >= 1");
  if (counts.counts.empty()) fail(errc::empty_sample, "erm_fit requires a nonempty sample");
  const std::int64_t x_max = counts.x_max;
  const auto m = static_cast<std::size_t>(x_max + 1);

  // Prefix sums of A and D; counts stay below 2^53 so doubles are exact.
  std::vector<double> pref_a(m + 1, 0.0), pref_d(m + 1, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    auto x = static_cast<std::int64_t>(i);
    double a = pochhammer(static_cast<double>(x) + 1.0, k) *
               static_cast<double>(counts.at(x + k));
    pref_a[i + 1] = pref_a[i] + a;
    pref_d[i + 1] = pref_d[i] + static_cast<double>(counts.at(x));
  }

  // For each u, suffix-scan v from x_max down to u; the running min over
  // ratios with D(u,v) > 0 is exactly min_{v >= x} A/D for x = v.
  std::vector<double> t(m, -std::numeric_limits<double>::infinity());
  for (std::size_t u = 0; u < m; ++u) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t v = m; v-- > u;) {
      double d = pref_d[v + 1] - pref_d[u];
      if (d > 0) best = std::min(best, (pref_a[v + 1] - pref_a[u]) / d);
      if (best < std::numeric_limits<double>::infinity()) t[v] = std::max(t[v], best);
    }
  }
  return StepEstimator(std::move(t));
}

StepEstimator erm_fit_clipped(const SampleCounts& counts, int k, double a, double b) {
  require(std::isfinite(a) && std::isfinite(b), errc::invalid_bounds,
          "clip bounds must be finite");
  if (!(a >= 0 && a < b)) fail(errc::invalid_bounds, "erm_fit_clipped requires 0 <= a < b");
  StepEstimator fit = erm_fit(counts, k);
  std::vector<double> clipped = fit.values();
  for (double& v : clipped) v = std::min(b, std::max(a, v));
  return StepEstimator(std::move(clipped));
}

}  // namespace ebpm
