#include "ebpm/poisson_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ebpm/error.hpp"
#include "ebpm/quadrature.hpp"
#include "ebpm/rng.hpp"

namespace ebpm {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// Internal series target; comfortably below the 1e-10 absolute tail budget.
constexpr double kSeriesTol = 1e-13;
constexpr std::int64_t kSeriesCap = 5'000'000;

double log_pochhammer(double x, int m) {
  double s = 0;
  for (int i = 0; i < m; ++i) s += std::log(x + i);
  return s;
}

// log of e^{-theta} theta^x (the x! is handled by callers where it matters).
double log_poisson_kernel(double theta, std::int64_t x) {
  if (theta == 0) return x == 0 ? 0.0 : kNegInf;
  return static_cast<double>(x) * std::log(theta) - theta;
}

double log_sum_exp(const std::vector<double>& v) {
  double m = kNegInf;
  for (double t : v) m = std::max(m, t);
  if (m == kNegInf) return kNegInf;
  double s = 0;
  for (double t : v) s += std::exp(t - m);
  return m + std::log(s);
}

double gamma_log_pmf(double shape, double rate, std::int64_t x) {
  // Negative binomial: C(x+shape-1, x) (rate/(1+rate))^shape (1/(1+rate))^x.
  double xd = static_cast<double>(x);
  return std::lgamma(xd + shape) - std::lgamma(shape) - std::lgamma(xd + 1.0) +
         shape * (std::log(rate) - std::log1p(rate)) - xd * std::log1p(rate);
}

double sample_one(const Prior& prior, Rng& rng) {
  switch (prior.kind()) {
    case Prior::Kind::point_masses: {
      double u = rng.next_double();
      double acc = 0;
      const auto& atoms = prior.atoms();
      for (const auto& a : atoms) {
        acc += a.weight;
        if (u < acc) return a.theta;
      }
      return atoms.back().theta;
    }
    case Prior::Kind::uniform:
      return rng.uniform(prior.lo(), prior.hi());
    case Prior::Kind::gamma:
      return rng.gamma(prior.shape(), prior.rate());
    case Prior::Kind::exponential:
      return rng.exponential(prior.scale());
  }
  fail(errc::invalid_argument, "unknown prior kind");
}

}  // namespace

double pochhammer(double x, int m) {
  require(m >= 0, errc::invalid_argument, "pochhammer requires m >= 0");
  double r = 1.0;
  for (int i = 0; i < m; ++i) r *= (x + i);
  return r;
}

double falling_factorial(double x, int m) {
  require(m >= 0, errc::invalid_argument, "falling_factorial requires m >= 0");
  double r = 1.0;
  for (int i = 0; i < m; ++i) r *= (x - i);
  return r;
}

double mixture_log_pmf(const Prior& prior, std::int64_t x) {
  require(x >= 0, errc::invalid_argument, "mixture pmf requires x >= 0");
  const double xd = static_cast<double>(x);
  switch (prior.kind()) {
    case Prior::Kind::point_masses: {
      std::vector<double> terms;
      terms.reserve(prior.atoms().size());
      for (const auto& a : prior.atoms()) {
        double lk = log_poisson_kernel(a.theta, x);
        if (lk == kNegInf) continue;
        terms.push_back(std::log(a.weight) + lk);
      }
      double ls = log_sum_exp(terms);
      return ls == kNegInf ? kNegInf : ls - std::lgamma(xd + 1.0);
    }
    case Prior::Kind::uniform: {
      auto g = [x](double theta) { return log_poisson_kernel(theta, x); };
      auto one = [](double) { return 1.0; };
      Scaled s = integrate_scaled(g, one, prior.lo(), prior.hi());
      if (s.mantissa <= 0) return kNegInf;
      return s.log_abs() - std::lgamma(xd + 1.0) - std::log(prior.hi() - prior.lo());
    }
    case Prior::Kind::gamma:
      return gamma_log_pmf(prior.shape(), prior.rate(), x);
    case Prior::Kind::exponential:
      return gamma_log_pmf(1.0, 1.0 / prior.scale(), x);
  }
  fail(errc::invalid_argument, "unknown prior kind");
}

double mixture_pmf(const Prior& prior, std::int64_t x) {
  return std::exp(mixture_log_pmf(prior, x));
}

MixturePmfCache::MixturePmfCache(Prior prior, double tail_tol) : prior_(std::move(prior)) {
  require(tail_tol > 0 && tail_tol < 1, errc::invalid_argument, "tail_tol must be in (0,1)");
  double cum = 0;
  for (std::int64_t x = 0;; ++x) {
    double lp = mixture_log_pmf(prior_, x);
    log_pmf_.push_back(lp);
    cum += std::exp(lp);
    if (1.0 - cum <= tail_tol) {
      cutoff_ = x;
      break;
    }
    require(x < kSeriesCap, errc::no_progress, "pmf cache did not reach the mass target");
  }
}

double MixturePmfCache::log_pmf(std::int64_t x) const {
  require(x >= 0, errc::invalid_argument, "mixture pmf requires x >= 0");
  if (static_cast<std::size_t>(x) < log_pmf_.size()) return log_pmf_[static_cast<std::size_t>(x)];
  return mixture_log_pmf(prior_, x);
}

double MixturePmfCache::pmf(std::int64_t x) const { return std::exp(log_pmf(x)); }

namespace {

double bayes_from_log_pmf(double log_fx, double log_fxk, int k, std::int64_t x) {
  if (log_fx == kNegInf) {
    fail(errc::unsupported_point, "bayes_estimate: f(x) underflows to zero at x=" +
                                      std::to_string(x));
  }
  return std::exp(log_pochhammer(static_cast<double>(x) + 1.0, k) + log_fxk - log_fx);
}

}  // namespace

double bayes_estimate(const Prior& prior, int k, std::int64_t x) {
  require(k >= 1, errc::invalid_argument, "bayes_estimate requires k >= 1");
  require(x >= 0, errc::invalid_argument, "bayes_estimate requires x >= 0");
  return bayes_from_log_pmf(mixture_log_pmf(prior, x), mixture_log_pmf(prior, x + k), k, x);
}

double bayes_estimate(const MixturePmfCache& cache, int k, std::int64_t x) {
  require(k >= 1, errc::invalid_argument, "bayes_estimate requires k >= 1");
  require(x >= 0, errc::invalid_argument, "bayes_estimate requires x >= 0");
  return bayes_from_log_pmf(cache.log_pmf(x), cache.log_pmf(x + k), k, x);
}

double mmse(const Prior& prior, int k) {
  require(k >= 1, errc::invalid_argument, "mmse requires k >= 1");
  const double moment_2k = prior_moment(prior, 2 * k);
  if (prior.support_max() == 0) return 0.0;

  double series = 0;
  double cum = 0;
  if (prior.bounded()) {
    // Residual after x is at most h^{2k} (1 - cum).
    const double h2k = std::pow(prior.support_max(), 2 * k);
    for (std::int64_t x = 0;; ++x) {
      double lfx = mixture_log_pmf(prior, x);
      if (lfx > kNegInf) {
        double lfxk = mixture_log_pmf(prior, x + k);
        double lp = log_pochhammer(static_cast<double>(x) + 1.0, k);
        series += std::exp(2.0 * (lp + lfxk) - lfx);
        cum += std::exp(lfx);
      }
      double rem = 1.0 - cum;
      if (rem <= 1e-16 || h2k * rem <= kSeriesTol) break;
      require(x < kSeriesCap, errc::no_progress, "mmse series did not converge");
    }
  } else {
    // Jensen: f(x) t_k(x)^2 <= f(x) t_{2k}(x) = (x+1)_{2k} f(x+2k); geometric
    // extrapolation of that envelope bounds the remaining tail.
    double prev_u = std::numeric_limits<double>::infinity();
    for (std::int64_t x = 0;; ++x) {
      double lfx = mixture_log_pmf(prior, x);
      double lfxk = mixture_log_pmf(prior, x + k);
      double lp = log_pochhammer(static_cast<double>(x) + 1.0, k);
      series += std::exp(2.0 * (lp + lfxk) - lfx);
      double u = std::exp(log_pochhammer(static_cast<double>(x) + 2.0, 2 * k) +
                          mixture_log_pmf(prior, x + 1 + 2 * k));
      if (u < prev_u) {
        double r = prev_u == std::numeric_limits<double>::infinity() ? 1.0 : u / prev_u;
        if (r < 0.95 && u / (1.0 - r) <= kSeriesTol) break;
      }
      prev_u = u;
      require(x < kSeriesCap, errc::no_progress, "mmse series did not converge");
    }
  }
  return moment_2k - series;
}

TailCutoff tail_cutoff(const PriorClassTag& cls, std::int64_t n) {
  require(n >= 3, errc::invalid_argument, "tail_cutoff requires n >= 3");
  const double log_n = std::log(static_cast<double>(n));
  if (cls.kind == PriorClassTag::Kind::sub_exponential) {
    auto x0 = static_cast<std::int64_t>(std::ceil((cls.param + 1.0) * log_n));
    return TailCutoff{x0, cls, n};
  }
  const double h = cls.param;
  // Chernoff bound for Poi(lambda), lambda <= h, evaluated at integer x >= h:
  // log P[X >= x] <= x (1 + log h) - h - x log x.
  auto x = static_cast<std::int64_t>(std::max(1.0, std::ceil(h)));
  for (;; ++x) {
    double xd = static_cast<double>(x);
    double log_bound = xd * (1.0 + std::log(h)) - h - xd * std::log(xd);
    if (log_bound <= -log_n) break;
    require(x < kSeriesCap, errc::no_progress, "tail_cutoff search did not converge");
  }
  return TailCutoff{x, cls, n};
}

ChannelSample sample_channel(const Prior& prior, std::int64_t n, std::uint64_t seed) {
  require(n >= 1, errc::invalid_argument, "sample_channel requires n >= 1");
  Rng rng(seed);
  ChannelSample out;
  out.thetas.reserve(static_cast<std::size_t>(n));
  out.xs.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    double theta = sample_one(prior, rng);
    out.thetas.push_back(theta);
    out.xs.push_back(rng.poisson(theta));
  }
  return out;
}

double posterior_mean(const Prior& prior, const std::function<double(double)>& f,
                      std::int64_t x) {
  require(x >= 0, errc::invalid_argument, "posterior_mean requires x >= 0");
  switch (prior.kind()) {
    case Prior::Kind::point_masses: {
      const auto& atoms = prior.atoms();
      double m = kNegInf;
      std::vector<double> lps(atoms.size(), kNegInf);
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        double lk = log_poisson_kernel(atoms[i].theta, x);
        if (lk == kNegInf) continue;
        lps[i] = std::log(atoms[i].weight) + lk;
        m = std::max(m, lps[i]);
      }
      if (m == kNegInf) fail(errc::unsupported_point, "posterior_mean: zero likelihood at x");
      double num = 0, den = 0;
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (lps[i] == kNegInf) continue;
        double w = std::exp(lps[i] - m);
        num += w * f(atoms[i].theta);
        den += w;
      }
      return num / den;
    }
    case Prior::Kind::uniform: {
      auto g = [x](double theta) { return log_poisson_kernel(theta, x); };
      auto one = [](double) { return 1.0; };
      Scaled num = integrate_scaled(g, f, prior.lo(), prior.hi());
      Scaled den = integrate_scaled(g, one, prior.lo(), prior.hi());
      if (den.mantissa <= 0) fail(errc::unsupported_point, "posterior_mean: zero likelihood at x");
      return num.mantissa / den.mantissa * std::exp(num.log_scale - den.log_scale);
    }
    case Prior::Kind::gamma:
    case Prior::Kind::exponential: {
      // Posterior is Gamma(x + shape, rate + 1).
      double shape = prior.kind() == Prior::Kind::gamma ? prior.shape() : 1.0;
      double rate = prior.kind() == Prior::Kind::gamma ? prior.rate() : 1.0 / prior.scale();
      double post_shape = static_cast<double>(x) + shape;
      double post_rate = rate + 1.0;
      double mean = post_shape / post_rate;
      double upper = mean + 60.0 * std::sqrt(post_shape) / post_rate + 10.0;
      auto g = [post_shape, post_rate](double theta) {
        return theta <= 0 ? kNegInf : (post_shape - 1.0) * std::log(theta) - post_rate * theta;
      };
      auto one = [](double) { return 1.0; };
      Scaled num = integrate_scaled(g, f, 0.0, upper);
      Scaled den = integrate_scaled(g, one, 0.0, upper);
      if (den.mantissa <= 0) fail(errc::unsupported_point, "posterior_mean: zero likelihood at x");
      return num.mantissa / den.mantissa * std::exp(num.log_scale - den.log_scale);
    }
  }
  fail(errc::invalid_argument, "unknown prior kind");
}

double mmse_functional(const Prior& prior, const std::function<double(double)>& f) {
  require(prior.bounded(), errc::invalid_argument,
          "mmse_functional requires a bounded-support prior");
  const double h = prior.support_max();

  double sup_abs = 0;
  const int grid = 10'000;
  for (int i = 0; i <= grid; ++i) {
    double theta = h * i / grid;
    double v = f(theta);
    require(std::isfinite(v), errc::non_finite_function, "functional not finite on [0, h]");
    sup_abs = std::max(sup_abs, std::fabs(v));
  }

  double ef2 = 0;
  if (prior.kind() == Prior::Kind::point_masses) {
    for (const auto& a : prior.atoms()) ef2 += a.weight * f(a.theta) * f(a.theta);
  } else {
    auto zero = [](double) { return 0.0; };
    auto f2 = [&f](double theta) { return f(theta) * f(theta); };
    Scaled s = integrate_scaled(zero, f2, prior.lo(), prior.hi());
    ef2 = s.value() / (prior.hi() - prior.lo());
  }

  double series = 0, cum = 0;
  const double bound = std::max(sup_abs * sup_abs, 1e-300);
  for (std::int64_t x = 0;; ++x) {
    double fx = mixture_pmf(prior, x);
    if (fx > 0) {
      double pm = posterior_mean(prior, f, x);
      series += fx * pm * pm;
      cum += fx;
    }
    double rem = 1.0 - cum;
    if (rem <= 1e-16 || bound * rem <= kSeriesTol) break;
    require(x < kSeriesCap, errc::no_progress, "mmse_functional series did not converge");
  }
  return ef2 - series;
}

}  // namespace ebpm
