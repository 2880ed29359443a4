#include "ebpm/quadrature.hpp"

#include <array>
#include <limits>
#include <vector>

#include "ebpm/error.hpp"

namespace ebpm {

namespace {

constexpr int kNodes = 128;

struct GaussLegendre {
  std::array<double, kNodes> x{};
  std::array<double, kNodes> w{};
};

// Nodes and weights on [-1, 1] by Newton iteration on P_n.
GaussLegendre compute_gl() {
  GaussLegendre gl;
  const int n = kNodes;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    gl.x[static_cast<std::size_t>(i)] = -x;
    gl.x[static_cast<std::size_t>(n - 1 - i)] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    gl.w[static_cast<std::size_t>(i)] = w;
    gl.w[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return gl;
}

const GaussLegendre& gl_table() {
  static const GaussLegendre gl = compute_gl();
  return gl;
}

// One dyadic level: 2^level equal panels, 128-node rule per panel.
// Returns sum of phi * exp(g - shift) over all nodes (weighted).
double level_sum(const std::function<double(double)>& g, const std::function<double(double)>& phi,
                 double lo, double hi, int level, double shift) {
  const auto& gl = gl_table();
  const int panels = 1 << level;
  const double width = (hi - lo) / panels;
  double total = 0;
  for (int p = 0; p < panels; ++p) {
    double a = lo + p * width;
    double half = 0.5 * width;
    double mid = a + half;
    double s = 0;
    for (int i = 0; i < kNodes; ++i) {
      double t = mid + half * gl.x[static_cast<std::size_t>(i)];
      double lg = g(t);
      if (lg == -std::numeric_limits<double>::infinity()) continue;
      s += gl.w[static_cast<std::size_t>(i)] * phi(t) * std::exp(lg - shift);
    }
    total += s * half;
  }
  return total;
}

}  // namespace

Scaled integrate_scaled(const std::function<double(double)>& log_weight,
                        const std::function<double(double)>& phi, double lo, double hi,
                        double rel_tol, int max_levels) {
  require(hi > lo, errc::invalid_argument, "integrate_scaled requires hi > lo");
  // Probe the log-weight to find the scale shift.
  double shift = -std::numeric_limits<double>::infinity();
  const int probes = 257;
  for (int i = 0; i <= probes; ++i) {
    double t = lo + (hi - lo) * i / probes;
    if (t <= lo || t >= hi) continue;
    shift = std::max(shift, log_weight(t));
  }
  if (shift == -std::numeric_limits<double>::infinity()) return Scaled{0.0, 0.0};

  double prev = level_sum(log_weight, phi, lo, hi, 0, shift);
  for (int level = 1; level <= max_levels; ++level) {
    double cur = level_sum(log_weight, phi, lo, hi, level, shift);
    double denom = std::max(std::fabs(cur), std::fabs(prev));
    if (denom == 0 || std::fabs(cur - prev) <= rel_tol * denom) {
      return Scaled{cur, shift};
    }
    prev = cur;
  }
  return Scaled{prev, shift};
}

}  // namespace ebpm
