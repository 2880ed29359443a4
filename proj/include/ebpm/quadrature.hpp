#pragma once

#include <cmath>
#include <functional>
#include <limits>

namespace ebpm {

/// A number represented as mantissa * e^{log_scale}, so integrals of sharply
/// peaked integrands never leave the representable range.
struct Scaled {
  double mantissa = 0;
  double log_scale = 0;

  double value() const { return mantissa * std::exp(log_scale); }
  double log_abs() const {
    return mantissa == 0 ? -std::numeric_limits<double>::infinity()
                         : std::log(std::fabs(mantissa)) + log_scale;
  }
};

/// Adaptive Gauss-Legendre on [lo, hi] of phi(theta) * e^{g(theta)}.
/// The panel count doubles until two consecutive dyadic levels agree to
/// rel_tol; 128 nodes per panel. g supplies the scale (its maximum over the
/// sampled nodes is factored out), phi carries sign and slowly varying parts.
Scaled integrate_scaled(const std::function<double(double)>& log_weight,
                        const std::function<double(double)>& phi, double lo, double hi,
                        double rel_tol = 1e-11, int max_levels = 9);

}  // namespace ebpm
