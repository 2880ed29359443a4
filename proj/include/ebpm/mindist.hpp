#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ebpm/estimators.hpp"
#include "ebpm/prior.hpp"

namespace ebpm {

/// Atoms and weights on a fixed theta grid; the decision variable of the
/// NPMLE / minimum-distance solvers.
struct GridMixingDistribution {
  std::vector<double> atoms;    // sorted, distinct, >= 0
  std::vector<double> weights;  // >= 0, sum 1 within 1e-10

  GridMixingDistribution(std::vector<double> atoms, std::vector<double> weights);
  /// Point-mass prior over the positive-weight atoms.
  Prior to_prior() const;
  double mean() const;
};

enum class DivergenceKind { kl, squared_hellinger, chi_squared };

/// d(p || q) for finite pmfs on a common integer range.
double divergence(DivergenceKind kind, std::span<const double> p, std::span<const double> q);

/// Equispaced theta grid: [0, h] for the bounded class, [0, x_max +
/// 3 sqrt(x_max + 1)] otherwise. Always contains both endpoints.
std::vector<double> make_grid(std::int64_t x_max, const PriorClassTag& cls, int points);

struct FitReport {
  double objective = 0;  // final value of the minimized objective
  int iterations = 0;
  bool converged = false;
  double gap = 0;  // Frank-Wolfe duality gap (or objective decrement) at stop
  std::vector<double> trace;  // objective after each iteration
};

/// Maximum-likelihood weights over the grid by Frank-Wolfe with exact line
/// search; report.objective is the negative average log-likelihood.
std::pair<GridMixingDistribution, FitReport> npmle_fit(const SampleCounts& counts,
                                                       std::span<const double> grid,
                                                       double tol = 1e-7, int max_iter = 5000);

/// EM (fixed-point) solver for the same objective; kept as a cross-check.
std::pair<GridMixingDistribution, FitReport> npmle_fit_em(const SampleCounts& counts,
                                                          std::span<const double> grid,
                                                          double tol = 1e-7, int max_iter = 5000);

/// Minimum-distance weights: minimizes d(p_emp || f_Q) over the grid simplex.
/// The KL kind is objective-equivalent to npmle_fit up to the empirical
/// entropy constant. Chi-squared sums over the cells x <= x_max + support_pad
/// (pass the moment order k when the fit feeds a degree-k plugin); empty
/// empirical cells then contribute q(x).
std::pair<GridMixingDistribution, FitReport> mindist_fit(const SampleCounts& counts,
                                                         std::span<const double> grid,
                                                         DivergenceKind kind, double tol = 1e-7,
                                                         int max_iter = 5000, int support_pad = 1);

/// Tweedie estimator under the fitted mixture, tabulated on [0, x_max].
StepEstimator plugin_bayes(const GridMixingDistribution& fitted, int k, std::int64_t x_max);

/// The biased foil (E[theta|X])^k.
StepEstimator naive_plugin(const GridMixingDistribution& fitted, int k, std::int64_t x_max);

std::string mixture_to_csv(const GridMixingDistribution& fitted);
GridMixingDistribution mixture_from_csv(const std::string& text);

}  // namespace ebpm
