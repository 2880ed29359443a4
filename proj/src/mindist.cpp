#include "ebpm/mindist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ebpm/error.hpp"
#include "ebpm/format.hpp"
#include "ebpm/poisson_oracle.hpp"

namespace ebpm {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_kernel(double theta, std::int64_t x) {
  if (theta == 0) return x == 0 ? 0.0 : kNegInf;
  return static_cast<double>(x) * std::log(theta) - theta;
}

// Likelihood cells: one row per x value entering the objective. Rows are
// scaled by e^{-m_i}, m_i = max_j log p(x_i | theta_j), so mixtures at far-out
// cells never underflow; the scale folds out of every gradient formula used
// below.
struct Cells {
  std::vector<std::int64_t> xs;
  std::vector<double> emp;                  // empirical pmf, may be 0
  std::vector<double> scale;                // e^{m_i}
  std::vector<std::vector<double>> ps;      // ps[i][j] = p(x_i|theta_j) / e^{m_i}
};

Cells build_cells(const SampleCounts& counts, std::span<const double> grid,
                  std::int64_t include_all_upto) {
  Cells cells;
  if (include_all_upto >= 0) {
    for (std::int64_t x = 0; x <= include_all_upto; ++x) cells.xs.push_back(x);
  } else {
    for (const auto& [x, nx] : counts.counts) cells.xs.push_back(x);
  }
  const double n = static_cast<double>(counts.n);
  for (std::int64_t x : cells.xs) {
    cells.emp.push_back(static_cast<double>(counts.at(x)) / n);
    double lgx = std::lgamma(static_cast<double>(x) + 1.0);
    std::vector<double> lp(grid.size());
    double m = kNegInf;
    for (std::size_t j = 0; j < grid.size(); ++j) {
      lp[j] = log_kernel(grid[j], x) - lgx;
      m = std::max(m, lp[j]);
    }
    std::vector<double> row(grid.size(), 0.0);
    if (m > kNegInf) {
      for (std::size_t j = 0; j < grid.size(); ++j) row[j] = std::exp(lp[j] - m);
    } else {
      m = 0.0;  // whole row is zero; keep the scale benign
    }
    cells.scale.push_back(std::exp(m));
    cells.ps.push_back(std::move(row));
  }
  return cells;
}

// Scaled mixture values fs_i = sum_j w_j ps[i][j].
std::vector<double> mix(const Cells& cells, const std::vector<double>& w) {
  std::vector<double> fs(cells.xs.size(), 0.0);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const auto& row = cells.ps[i];
    double s = 0;
    for (std::size_t j = 0; j < w.size(); ++j) s += w[j] * row[j];
    fs[i] = s;
  }
  return fs;
}

struct DivergenceOps {
  DivergenceKind kind;

  double value(const Cells& c, const std::vector<double>& fs) const {
    double acc = 0;
    switch (kind) {
      case DivergenceKind::kl:
        // Negative average log-likelihood; the entropy constant is added by
        // the caller that wants the actual KL value.
        for (std::size_t i = 0; i < fs.size(); ++i) {
          if (c.emp[i] == 0) continue;
          acc -= c.emp[i] * (std::log(fs[i]) + std::log(c.scale[i]));
        }
        return acc;
      case DivergenceKind::squared_hellinger:
        for (std::size_t i = 0; i < fs.size(); ++i) {
          if (c.emp[i] == 0) continue;
          acc -= 2.0 * std::sqrt(c.emp[i] * fs[i] * c.scale[i]);
        }
        return 2.0 + acc;
      case DivergenceKind::chi_squared:
        for (std::size_t i = 0; i < fs.size(); ++i) {
          double q = fs[i] * c.scale[i];
          double p = c.emp[i];
          if (q == 0 && p == 0) continue;
          acc += (p - q) * (p - q) / q;
        }
        return acc;
    }
    return acc;
  }

  // d/d(fs_i) of the objective (the row scale is already folded in), so the
  // gradient w.r.t. w_j is sum_i dfd_i ps[i][j].
  double dfd(const Cells& c, const std::vector<double>& fs, std::size_t i) const {
    switch (kind) {
      case DivergenceKind::kl:
        return c.emp[i] == 0 ? 0.0 : -c.emp[i] / fs[i];
      case DivergenceKind::squared_hellinger:
        return c.emp[i] == 0 ? 0.0
                             : -std::sqrt(c.emp[i] * c.scale[i] / fs[i]);
      case DivergenceKind::chi_squared: {
        double q = fs[i] * c.scale[i];
        if (q == 0) return 0.0;
        double r = c.emp[i] / q;
        return (1.0 - r * r) * c.scale[i];
      }
    }
    return 0.0;
  }
};

std::pair<GridMixingDistribution, FitReport> frank_wolfe(const SampleCounts& counts,
                                                         std::span<const double> grid,
                                                         const DivergenceOps& ops, double tol,
                                                         int max_iter,
                                                         std::int64_t include_all_upto) {
  require(!grid.empty(), errc::invalid_argument, "grid must be nonempty");
  require(tol > 0, errc::invalid_argument, "tol must be > 0");
  require(max_iter >= 1, errc::invalid_argument, "max_iter must be >= 1");
  if (counts.counts.empty()) fail(errc::empty_sample, "fit requires a nonempty sample");

  Cells cells = build_cells(counts, grid, include_all_upto);
  const std::size_t G = grid.size();
  std::vector<double> w(G, 1.0 / static_cast<double>(G));
  std::vector<double> fs = mix(cells, w);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (cells.emp[i] > 0 && fs[i] <= 0) {
      fail(errc::no_progress, "objective is not finite at the uniform initialization; grid does "
                              "not cover the observed support");
    }
  }

  FitReport report;
  double obj = ops.value(cells, fs);
  report.trace.push_back(obj);
  std::vector<double> dfd(fs.size());
  const double gamma_max = 1.0 - 1e-12;

  int iter = 0;
  double gap = std::numeric_limits<double>::infinity();
  for (iter = 1; iter <= max_iter; ++iter) {
    for (std::size_t i = 0; i < fs.size(); ++i) dfd[i] = ops.dfd(cells, fs, i);
    std::size_t best_j = 0;
    double best_g = std::numeric_limits<double>::infinity();
    double at_w = 0;
    for (std::size_t j = 0; j < G; ++j) {
      double g = 0;
      for (std::size_t i = 0; i < fs.size(); ++i) g += dfd[i] * cells.ps[i][j];
      if (g < best_g) {
        best_g = g;
        best_j = j;
      }
      at_w += w[j] * g;
    }
    gap = at_w - best_g;
    if (gap <= tol) {
      report.converged = true;
      break;
    }

    // Exact line search: the objective is convex along the segment, so the
    // directional derivative is monotone; bisect its sign change.
    std::vector<double> dir(fs.size());
    for (std::size_t i = 0; i < fs.size(); ++i) dir[i] = cells.ps[i][best_j] - fs[i];
    auto dphi = [&](double gamma) {
      std::vector<double> fg(fs.size());
      for (std::size_t i = 0; i < fs.size(); ++i) fg[i] = fs[i] + gamma * dir[i];
      double s = 0;
      for (std::size_t i = 0; i < fs.size(); ++i) s += ops.dfd(cells, fg, i) * dir[i];
      return s;
    };
    double gamma = gamma_max;
    if (dphi(gamma_max) > 0) {
      double lo = 0, hi = gamma_max;
      for (int b = 0; b < 60; ++b) {
        double mid = 0.5 * (lo + hi);
        (dphi(mid) <= 0 ? lo : hi) = mid;
      }
      gamma = 0.5 * (lo + hi);
    }

    for (std::size_t j = 0; j < G; ++j) w[j] *= (1.0 - gamma);
    w[best_j] += gamma;
    for (std::size_t i = 0; i < fs.size(); ++i) fs[i] += gamma * dir[i];
    obj = ops.value(cells, fs);
    report.trace.push_back(obj);
  }

  report.objective = obj;
  report.iterations = std::min(iter, max_iter);
  report.gap = gap;

  double sum = 0;
  for (double v : w) sum += v;
  for (double& v : w) v /= sum;
  return {GridMixingDistribution(std::vector<double>(grid.begin(), grid.end()), std::move(w)),
          report};
}

}  // namespace

GridMixingDistribution::GridMixingDistribution(std::vector<double> atoms_in,
                                               std::vector<double> weights_in)
    : atoms(std::move(atoms_in)), weights(std::move(weights_in)) {
  require(!atoms.empty() && atoms.size() == weights.size(), errc::invalid_argument,
          "atoms and weights must be nonempty and of equal length");
  double sum = 0;
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    require(std::isfinite(atoms[j]) && atoms[j] >= 0, errc::invalid_argument,
            "atoms must be finite and >= 0");
    if (j > 0) {
      require(atoms[j] > atoms[j - 1], errc::invalid_argument,
              "atoms must be strictly increasing");
    }
    require(weights[j] >= -1e-15, errc::invalid_argument, "weights must be >= 0");
    weights[j] = std::max(weights[j], 0.0);
    sum += weights[j];
  }
  require(std::fabs(sum - 1.0) <= 1e-10, errc::invalid_argument,
          "weights must sum to 1 within 1e-10");
  for (double& v : weights) v /= sum;
}

Prior GridMixingDistribution::to_prior() const {
  std::vector<Atom> kept;
  double mass = 0;
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    if (weights[j] > 0) {
      kept.push_back(Atom{atoms[j], weights[j]});
      mass += weights[j];
    }
  }
  require(mass > 0, errc::invalid_argument, "mixture has no positive weight");
  for (auto& a : kept) a.weight /= mass;
  return Prior::point_masses(std::move(kept));
}

double GridMixingDistribution::mean() const {
  double s = 0;
  for (std::size_t j = 0; j < atoms.size(); ++j) s += atoms[j] * weights[j];
  return s;
}

double divergence(DivergenceKind kind, std::span<const double> p, std::span<const double> q) {
  require(p.size() == q.size() && !p.empty(), errc::invalid_argument,
          "divergence requires pmfs on a common nonempty range");
  for (std::size_t i = 0; i < p.size(); ++i) {
    require(p[i] >= 0 && q[i] >= 0, errc::invalid_argument, "pmf entries must be >= 0");
  }
  double acc = 0;
  switch (kind) {
    case DivergenceKind::kl:
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0) continue;
        if (q[i] == 0) fail(errc::support_mismatch, "KL requires q > 0 wherever p > 0");
        acc += p[i] * std::log(p[i] / q[i]);
      }
      return acc;
    case DivergenceKind::squared_hellinger:
      for (std::size_t i = 0; i < p.size(); ++i) {
        double d = std::sqrt(p[i]) - std::sqrt(q[i]);
        acc += d * d;
      }
      return acc;
    case DivergenceKind::chi_squared:
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (q[i] == 0) {
          if (p[i] == 0) continue;
          fail(errc::support_mismatch, "chi-squared requires q > 0 wherever p > 0");
        }
        acc += (p[i] - q[i]) * (p[i] - q[i]) / q[i];
      }
      return acc;
  }
  fail(errc::invalid_argument, "unknown divergence kind");
}

std::vector<double> make_grid(std::int64_t x_max, const PriorClassTag& cls, int points) {
  require(points >= 2, errc::invalid_argument, "make_grid requires points >= 2");
  require(x_max >= 0, errc::invalid_argument, "make_grid requires x_max >= 0");
  double upper;
  if (cls.kind == PriorClassTag::Kind::bounded) {
    upper = cls.param;
  } else {
    double xm = static_cast<double>(x_max);
    upper = xm + 3.0 * std::sqrt(xm + 1.0);
  }
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int j = 0; j < points; ++j) {
    grid[static_cast<std::size_t>(j)] = upper * j / (points - 1);
  }
  grid.front() = 0.0;
  grid.back() = upper;
  return grid;
}

std::pair<GridMixingDistribution, FitReport> npmle_fit(const SampleCounts& counts,
                                                       std::span<const double> grid, double tol,
                                                       int max_iter) {
  return frank_wolfe(counts, grid, DivergenceOps{DivergenceKind::kl}, tol, max_iter, -1);
}

std::pair<GridMixingDistribution, FitReport> npmle_fit_em(const SampleCounts& counts,
                                                          std::span<const double> grid, double tol,
                                                          int max_iter) {
  require(!grid.empty(), errc::invalid_argument, "grid must be nonempty");
  require(tol > 0, errc::invalid_argument, "tol must be > 0");
  if (counts.counts.empty()) fail(errc::empty_sample, "fit requires a nonempty sample");

  Cells cells = build_cells(counts, grid, -1);
  const std::size_t G = grid.size();
  std::vector<double> w(G, 1.0 / static_cast<double>(G));
  std::vector<double> fs = mix(cells, w);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    require(fs[i] > 0, errc::no_progress, "grid does not cover the observed support");
  }
  DivergenceOps ops{DivergenceKind::kl};

  FitReport report;
  report.trace.push_back(ops.value(cells, fs));
  double gap = std::numeric_limits<double>::infinity();
  int iter = 0;
  for (iter = 1; iter <= max_iter; ++iter) {
    // Multiplicative fixed-point step; also yields the duality gap for free.
    std::vector<double> ratio(G, 0.0);
    for (std::size_t j = 0; j < G; ++j) {
      double r = 0;
      for (std::size_t i = 0; i < fs.size(); ++i) {
        if (cells.emp[i] == 0) continue;
        r += cells.emp[i] * cells.ps[i][j] / fs[i];
      }
      ratio[j] = r;
    }
    gap = *std::max_element(ratio.begin(), ratio.end()) - 1.0;
    if (gap <= tol) {
      report.converged = true;
      break;
    }
    double sum = 0;
    for (std::size_t j = 0; j < G; ++j) {
      w[j] *= ratio[j];
      sum += w[j];
    }
    for (double& v : w) v /= sum;
    fs = mix(cells, w);
    report.trace.push_back(ops.value(cells, fs));
  }
  report.objective = report.trace.back();
  report.iterations = std::min(iter, max_iter);
  report.gap = gap;
  return {GridMixingDistribution(std::vector<double>(grid.begin(), grid.end()), std::move(w)),
          report};
}

std::pair<GridMixingDistribution, FitReport> mindist_fit(const SampleCounts& counts,
                                                         std::span<const double> grid,
                                                         DivergenceKind kind, double tol,
                                                         int max_iter, int support_pad) {
  require(support_pad >= 0, errc::invalid_argument, "support_pad must be >= 0");
  std::int64_t upto = -1;
  if (kind == DivergenceKind::chi_squared) upto = counts.x_max + support_pad;
  auto [mix, report] = frank_wolfe(counts, grid, DivergenceOps{kind}, tol, max_iter, upto);
  if (kind == DivergenceKind::kl) {
    // Report the actual KL value: add the empirical entropy term.
    double ent = 0;
    for (const auto& [x, nx] : counts.counts) {
      double p = static_cast<double>(nx) / static_cast<double>(counts.n);
      ent += p * std::log(p);
    }
    report.objective += ent;
    for (double& v : report.trace) v += ent;
  }
  return {std::move(mix), std::move(report)};
}

namespace {

std::vector<double> plugin_values(const GridMixingDistribution& fitted, int k,
                                  std::int64_t x_max) {
  require(k >= 1, errc::invalid_argument, "plugin requires k >= 1");
  require(x_max >= 0, errc::invalid_argument, "plugin requires x_max >= 0");
  Prior prior = fitted.to_prior();
  std::vector<double> log_pmf(static_cast<std::size_t>(x_max + k) + 1);
  for (std::int64_t x = 0; x <= x_max + k; ++x) {
    log_pmf[static_cast<std::size_t>(x)] = mixture_log_pmf(prior, x);
  }
  std::vector<double> vals(static_cast<std::size_t>(x_max) + 1);
  for (std::int64_t x = 0; x <= x_max; ++x) {
    double lfx = log_pmf[static_cast<std::size_t>(x)];
    if (lfx == kNegInf) {
      fail(errc::unsupported_point,
           "plugin: fitted mixture pmf underflows at x=" + std::to_string(x));
    }
    double lp = 0;
    for (int i = 0; i < k; ++i) lp += std::log(static_cast<double>(x + 1 + i));
    vals[static_cast<std::size_t>(x)] =
        std::exp(lp + log_pmf[static_cast<std::size_t>(x + k)] - lfx);
  }
  return vals;
}

}  // namespace

StepEstimator plugin_bayes(const GridMixingDistribution& fitted, int k, std::int64_t x_max) {
  return StepEstimator(plugin_values(fitted, k, x_max));
}

StepEstimator naive_plugin(const GridMixingDistribution& fitted, int k, std::int64_t x_max) {
  std::vector<double> vals = plugin_values(fitted, 1, x_max);
  for (double& v : vals) v = std::pow(v, k);
  return StepEstimator(std::move(vals));
}

std::string mixture_to_csv(const GridMixingDistribution& fitted) {
  std::string out = "theta,weight\n";
  for (std::size_t j = 0; j < fitted.atoms.size(); ++j) {
    out += format_double(fitted.atoms[j]);
    out += ',';
    out += format_double(fitted.weights[j]);
    out += '\n';
  }
  return out;
}

GridMixingDistribution mixture_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), errc::parse_error, "empty mixture CSV");
  require(line == "theta,weight", errc::parse_error, "bad mixture CSV header");
  std::vector<double> atoms, weights;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto comma = line.find(',');
    require(comma != std::string::npos, errc::parse_error, "bad mixture CSV row");
    atoms.push_back(parse_double(line.substr(0, comma)));
    weights.push_back(parse_double(line.substr(comma + 1)));
  }
  return GridMixingDistribution(std::move(atoms), std::move(weights));
}

}  // namespace ebpm
