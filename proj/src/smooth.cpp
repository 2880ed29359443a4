#include "ebpm/smooth.hpp"

#include <algorithm>
#include <cmath>

#include "ebpm/error.hpp"
#include "ebpm/mindist.hpp"
#include "ebpm/poisson_oracle.hpp"

namespace ebpm {

namespace {

constexpr int kMaxDegree = 30;
constexpr int kResidualGrid = 10'000;

// Polynomial algebra in long double; coefficients indexed by power.
using Poly = std::vector<long double>;

void axpy(Poly& acc, long double alpha, const Poly& p) {
  if (acc.size() < p.size()) acc.resize(p.size(), 0.0L);
  for (std::size_t i = 0; i < p.size(); ++i) acc[i] += alpha * p[i];
}

// acc <- acc * (a x + b)
Poly mul_affine(const Poly& p, long double a, long double b) {
  Poly out(p.size() + 1, 0.0L);
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[i] += b * p[i];
    out[i + 1] += a * p[i];
  }
  return out;
}

}  // namespace

double PolyApprox::eval(double theta) const {
  double acc = 0;
  for (std::size_t i = coefficients.size(); i-- > 0;) acc = acc * theta + coefficients[i];
  return acc;
}

PolyApprox chebyshev_approx(const std::function<double(double)>& f, double h, int degree) {
  require(h > 0 && std::isfinite(h), errc::invalid_argument, "chebyshev_approx requires h > 0");
  require(degree >= 0, errc::invalid_argument, "degree must be >= 0");
  require(degree <= kMaxDegree, errc::invalid_argument,
          "degree above 30 rejected: monomial conversion is not reliable there");

  const int k = degree;
  PolyApprox out;
  out.degree = k;
  out.h = h;

  if (k == 0) {
    double v = f(h / 2);
    require(std::isfinite(v), errc::non_finite_function, "functional not finite on [0, h]");
    out.coefficients = {v};
  } else {
    // Values at Chebyshev-Lobatto nodes mapped onto [0, h].
    std::vector<long double> vals(static_cast<std::size_t>(k) + 1);
    for (int j = 0; j <= k; ++j) {
      long double t = std::cos(M_PI * j / k);
      double theta = 0.5 * h * (1.0 + static_cast<double>(t));
      double v = f(theta);
      require(std::isfinite(v), errc::non_finite_function, "functional not finite on [0, h]");
      vals[static_cast<std::size_t>(j)] = v;
    }

    // Chebyshev coefficients by the Clenshaw-Curtis cosine sums, with
    // compensated summation: a_m = (2/k) sum'' v_j cos(j m pi / k).
    std::vector<long double> cheb(static_cast<std::size_t>(k) + 1, 0.0L);
    for (int m = 0; m <= k; ++m) {
      long double sum = 0.0L, comp = 0.0L;
      for (int j = 0; j <= k; ++j) {
        long double term = vals[static_cast<std::size_t>(j)] *
                           static_cast<long double>(std::cos(M_PI * j * m / k));
        if (j == 0 || j == k) term *= 0.5L;
        long double y = term - comp;
        long double t2 = sum + y;
        comp = (t2 - sum) - y;
        sum = t2;
      }
      long double a = sum * 2.0L / k;
      if (m == 0 || m == k) a *= 0.5L;
      cheb[static_cast<std::size_t>(m)] = a;
    }

    // T_m recurrence in t, then substitute t = (2/h) theta - 1.
    Poly acc;
    Poly t_prev = {1.0L};
    Poly t_cur = {0.0L, 1.0L};
    for (int m = 0; m <= k; ++m) {
      const Poly& tm = (m == 0) ? t_prev : t_cur;
      axpy(acc, cheb[static_cast<std::size_t>(m)], tm);
      if (m >= 1 && m < k) {
        Poly next = mul_affine(t_cur, 2.0L, 0.0L);
        axpy(next, -1.0L, t_prev);
        t_prev = t_cur;
        t_cur = std::move(next);
      }
    }
    Poly in_theta = {acc.back()};
    const long double a = 2.0L / h, b = -1.0L;
    for (std::size_t i = acc.size() - 1; i-- > 0;) {
      in_theta = mul_affine(in_theta, a, b);
      in_theta[0] += acc[i];
    }
    in_theta.resize(static_cast<std::size_t>(k) + 1, 0.0L);
    out.coefficients.assign(in_theta.begin(), in_theta.end());
  }

  double sup = 0;
  for (int i = 0; i <= kResidualGrid; ++i) {
    double theta = h * i / kResidualGrid;
    double v = f(theta);
    require(std::isfinite(v), errc::non_finite_function, "functional not finite on [0, h]");
    sup = std::max(sup, std::fabs(v - out.eval(theta)));
  }
  out.sup_residual = sup;
  return out;
}

int select_degree(std::int64_t n, double c) {
  require(n >= 3, errc::invalid_argument, "select_degree requires n >= 3");
  require(c > 0 && c <= 1, errc::invalid_argument, "select_degree requires c in (0, 1]");
  double log_n = std::log(static_cast<double>(n));
  double log_log_n = std::log(log_n);
  if (log_log_n <= 1.0) return 1;
  return std::max(1, static_cast<int>(std::floor(c * log_n / log_log_n)));
}

std::function<double(double)> named_functional(const std::string& name, double h) {
  if (name == "cube") return [](double t) { return t * t * t; };
  if (name == "exp") return [](double t) { return std::exp(t); };
  if (name == "sqrt1p") return [](double t) { return std::sqrt(1.0 + t); };
  if (name == "lipschitz-abs") return [h](double t) { return std::fabs(t - h / 2); };
  fail(errc::invalid_argument, "unknown functional: " + name);
}

SmoothBackend SmoothBackend::erm() {
  SmoothBackend b;
  b.kind = Kind::erm;
  return b;
}

SmoothBackend SmoothBackend::npmle_plugin(int grid_points, double tol, int max_iter) {
  SmoothBackend b;
  b.kind = Kind::npmle_plugin;
  b.grid_points = grid_points;
  b.tol = tol;
  b.max_iter = max_iter;
  return b;
}

SmoothBackend SmoothBackend::oracle(Prior prior) {
  SmoothBackend b;
  b.kind = Kind::oracle;
  b.oracle_prior = std::make_shared<Prior>(std::move(prior));
  return b;
}

SmoothEstimator::SmoothEstimator(const SampleCounts& counts, PolyApprox approx,
                                 SmoothBackend backend)
    : approx_(std::move(approx)), backend_(std::move(backend)) {
  const int k = approx_.degree;
  switch (backend_.kind) {
    case SmoothBackend::Kind::robbins:
      for (int m = 1; m <= k; ++m) robbins_.push_back(robbins_fit(counts, m));
      break;
    case SmoothBackend::Kind::erm:
      for (int m = 1; m <= k; ++m) steps_.push_back(erm_fit(counts, m));
      break;
    case SmoothBackend::Kind::npmle_plugin: {
      auto grid = make_grid(counts.x_max, backend_.grid_class, backend_.grid_points);
      auto [fitted, report] = npmle_fit(counts, grid, backend_.tol, backend_.max_iter);
      for (int m = 1; m <= k; ++m) steps_.push_back(plugin_bayes(fitted, m, counts.x_max));
      break;
    }
    case SmoothBackend::Kind::oracle:
      require(backend_.oracle_prior != nullptr, errc::invalid_argument,
              "oracle backend requires a prior");
      pmf_cache_ = std::make_shared<MixturePmfCache>(*backend_.oracle_prior);
      break;
  }
}

double SmoothEstimator::operator()(std::int64_t x) const {
  const auto& c = approx_.coefficients;
  double acc = c.empty() ? 0.0 : c[0];
  for (int m = 1; m <= approx_.degree; ++m) {
    double cm = c[static_cast<std::size_t>(m)];
    if (cm == 0) continue;
    double tm;
    switch (backend_.kind) {
      case SmoothBackend::Kind::robbins: {
        const auto& fit = robbins_[static_cast<std::size_t>(m - 1)];
        auto it = fit.find(x);
        if (it == fit.end()) {
          fail(errc::unsupported_point,
               "robbins backend is defined on observed x only (x=" + std::to_string(x) + ")");
        }
        tm = it->second;
        break;
      }
      case SmoothBackend::Kind::erm:
      case SmoothBackend::Kind::npmle_plugin:
        tm = steps_[static_cast<std::size_t>(m - 1)](x);
        break;
      case SmoothBackend::Kind::oracle:
        tm = bayes_estimate(*pmf_cache_, m, x);
        break;
      default:
        fail(errc::invalid_argument, "unknown backend");
    }
    acc += cm * tm;
  }
  return acc;
}

double smooth_estimate(const SampleCounts& counts, const PolyApprox& approx,
                       const SmoothBackend& backend, std::int64_t x) {
  return SmoothEstimator(counts, approx, backend)(x);
}

}  // namespace ebpm
