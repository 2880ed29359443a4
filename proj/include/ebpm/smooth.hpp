#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ebpm/estimators.hpp"
#include "ebpm/prior.hpp"

namespace ebpm {

/// Degree-k monomial-basis approximation of a functional on [0, h], together
/// with its measured sup-norm residual.
struct PolyApprox {
  int degree = 0;
  std::vector<double> coefficients;  // c_0 .. c_degree
  double sup_residual = 0;           // max |f - p| on a 10^4-point grid
  double h = 1;

  double eval(double theta) const;
};

/// Chebyshev-Lobatto interpolant of f on [0, h], converted to monomial
/// coefficients in extended precision. Degrees above 30 are rejected: the
/// monomial basis conditioning degrades as e^k beyond that.
PolyApprox chebyshev_approx(const std::function<double(double)>& f, double h, int degree);

/// Approximation degree for sample size n: max(1, floor(c log n / log log n)),
/// with degree 1 whenever log log n <= 1 (n <= e^e), where the ratio is not
/// yet meaningful.
int select_degree(std::int64_t n, double c);

/// Built-in named functionals: "cube", "exp", "sqrt1p", "lipschitz-abs".
std::function<double(double)> named_functional(const std::string& name, double h);

struct SmoothBackend {
  enum class Kind { robbins, erm, npmle_plugin, oracle };
  Kind kind = Kind::robbins;
  // npmle_plugin options
  int grid_points = 400;
  double tol = 1e-7;
  int max_iter = 5000;
  PriorClassTag grid_class{PriorClassTag::Kind::sub_exponential, 1.0};
  // oracle: the true prior
  std::shared_ptr<const Prior> oracle_prior;

  static SmoothBackend robbins() { return SmoothBackend{}; }
  static SmoothBackend erm();
  static SmoothBackend npmle_plugin(int grid_points = 400, double tol = 1e-7, int max_iter = 5000);
  static SmoothBackend oracle(Prior prior);
};

/// Combination estimator c_0 + sum_m c_m T_m(x): the per-moment backend fits
/// are built once and reused across evaluation points.
class SmoothEstimator {
 public:
  SmoothEstimator(const SampleCounts& counts, PolyApprox approx, SmoothBackend backend);
  double operator()(std::int64_t x) const;
  const PolyApprox& approx() const { return approx_; }

 private:
  PolyApprox approx_;
  SmoothBackend backend_;
  std::vector<std::map<std::int64_t, double>> robbins_;  // per moment m = 1..k
  std::vector<StepEstimator> steps_;                     // per moment m = 1..k
  std::shared_ptr<const class MixturePmfCache> pmf_cache_;  // oracle backend
};

/// One-shot form of the combination estimator.
double smooth_estimate(const SampleCounts& counts, const PolyApprox& approx,
                       const SmoothBackend& backend, std::int64_t x);

}  // namespace ebpm
