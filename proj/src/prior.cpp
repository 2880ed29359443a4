#include "ebpm/prior.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/special_functions/gamma.hpp>
#include <nlohmann/json.hpp>

#include "ebpm/error.hpp"
#include "ebpm/rng.hpp"

namespace ebpm {

namespace {

constexpr double kWeightSumTol = 1e-12;
constexpr int kTruncationGridAtoms = 2048;

double rising_factorial(double x, int m) {
  double r = 1.0;
  for (int i = 0; i < m; ++i) r *= (x + i);
  return r;
}

}  // namespace

Prior Prior::point_masses(std::vector<Atom> atoms) {
  require(!atoms.empty(), errc::invalid_argument, "point_masses requires at least one atom");
  double sum = 0;
  for (const auto& a : atoms) {
    require(std::isfinite(a.theta) && a.theta >= 0, errc::invalid_argument,
            "atom locations must be finite and >= 0");
    require(std::isfinite(a.weight) && a.weight > 0, errc::invalid_argument,
            "atom weights must be strictly positive");
    sum += a.weight;
  }
  require(std::fabs(sum - 1.0) <= kWeightSumTol, errc::invalid_argument,
          "atom weights must sum to 1 within 1e-12");
  for (auto& a : atoms) a.weight /= sum;
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& x, const Atom& y) { return x.theta < y.theta; });
  Prior p;
  p.kind_ = Kind::point_masses;
  p.atoms_ = std::move(atoms);
  return p;
}

Prior Prior::uniform(double lo, double hi) {
  require(std::isfinite(lo) && std::isfinite(hi) && lo >= 0 && hi > lo, errc::invalid_argument,
          "uniform requires finite 0 <= lo < hi");
  Prior p;
  p.kind_ = Kind::uniform;
  p.a_ = lo;
  p.b_ = hi;
  return p;
}

Prior Prior::gamma(double shape, double rate) {
  require(std::isfinite(shape) && shape > 0 && std::isfinite(rate) && rate > 0,
          errc::invalid_argument, "gamma requires shape > 0 and rate > 0");
  Prior p;
  p.kind_ = Kind::gamma;
  p.a_ = shape;
  p.b_ = rate;
  return p;
}

Prior Prior::exponential(double scale) {
  require(std::isfinite(scale) && scale > 0, errc::invalid_argument,
          "exponential requires scale > 0");
  Prior p;
  p.kind_ = Kind::exponential;
  p.a_ = scale;
  return p;
}

const std::vector<Atom>& Prior::atoms() const {
  require(kind_ == Kind::point_masses, errc::invalid_argument, "atoms(): not a point-mass prior");
  return atoms_;
}

double Prior::lo() const {
  require(kind_ == Kind::uniform, errc::invalid_argument, "lo(): not a uniform prior");
  return a_;
}

double Prior::hi() const {
  require(kind_ == Kind::uniform, errc::invalid_argument, "hi(): not a uniform prior");
  return b_;
}

double Prior::shape() const {
  require(kind_ == Kind::gamma, errc::invalid_argument, "shape(): not a gamma prior");
  return a_;
}

double Prior::rate() const {
  require(kind_ == Kind::gamma, errc::invalid_argument, "rate(): not a gamma prior");
  return b_;
}

double Prior::scale() const {
  require(kind_ == Kind::exponential, errc::invalid_argument, "scale(): not an exponential prior");
  return a_;
}

bool Prior::bounded() const {
  return kind_ == Kind::point_masses || kind_ == Kind::uniform;
}

double Prior::support_max() const {
  switch (kind_) {
    case Kind::point_masses: return atoms_.back().theta;
    case Kind::uniform: return b_;
    default: return std::numeric_limits<double>::infinity();
  }
}

double Prior::pdf(double theta) const {
  switch (kind_) {
    case Kind::uniform:
      return (theta >= a_ && theta <= b_) ? 1.0 / (b_ - a_) : 0.0;
    case Kind::gamma: {
      if (theta <= 0) return 0.0;
      double lg = a_ * std::log(b_) - std::lgamma(a_) + (a_ - 1) * std::log(theta) - b_ * theta;
      return std::exp(lg);
    }
    case Kind::exponential:
      return theta >= 0 ? std::exp(-theta / a_) / a_ : 0.0;
    default:
      fail(errc::invalid_argument, "pdf(): point-mass priors have no density");
  }
}

PriorClassTag PriorClassTag::bounded(double h) {
  require(h > 0 && std::isfinite(h), errc::invalid_argument, "bounded class requires h > 0");
  return PriorClassTag{Kind::bounded, h};
}

PriorClassTag PriorClassTag::sub_exponential(double s) {
  require(s > 0 && std::isfinite(s), errc::invalid_argument,
          "sub_exponential class requires s > 0");
  return PriorClassTag{Kind::sub_exponential, s};
}

std::vector<double> sample_theta(const Prior& prior, std::int64_t n, std::uint64_t seed) {
  require(n >= 1, errc::invalid_argument, "sample_theta requires n >= 1");
  Rng rng(seed);
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  switch (prior.kind()) {
    case Prior::Kind::point_masses: {
      const auto& atoms = prior.atoms();
      std::vector<double> cum(atoms.size());
      double acc = 0;
      for (std::size_t i = 0; i < atoms.size(); ++i) {
        acc += atoms[i].weight;
        cum[i] = acc;
      }
      cum.back() = 1.0;
      for (std::int64_t i = 0; i < n; ++i) {
        double u = rng.next_double();
        auto it = std::upper_bound(cum.begin(), cum.end(), u);
        out.push_back(atoms[static_cast<std::size_t>(it - cum.begin())].theta);
      }
      break;
    }
    case Prior::Kind::uniform:
      for (std::int64_t i = 0; i < n; ++i) out.push_back(rng.uniform(prior.lo(), prior.hi()));
      break;
    case Prior::Kind::gamma:
      for (std::int64_t i = 0; i < n; ++i) out.push_back(rng.gamma(prior.shape(), prior.rate()));
      break;
    case Prior::Kind::exponential:
      for (std::int64_t i = 0; i < n; ++i) out.push_back(rng.exponential(prior.scale()));
      break;
  }
  return out;
}

double prior_moment(const Prior& prior, int p) {
  require(p >= 0, errc::invalid_argument, "prior_moment requires p >= 0");
  if (p == 0) return 1.0;
  switch (prior.kind()) {
    case Prior::Kind::point_masses: {
      double s = 0;
      for (const auto& a : prior.atoms()) s += a.weight * std::pow(a.theta, p);
      return s;
    }
    case Prior::Kind::uniform: {
      // (hi^{p+1} - lo^{p+1}) / ((p+1)(hi-lo))
      double lo = prior.lo(), hi = prior.hi();
      return (std::pow(hi, p + 1) - std::pow(lo, p + 1)) / ((p + 1) * (hi - lo));
    }
    case Prior::Kind::gamma:
      return rising_factorial(prior.shape(), p) / std::pow(prior.rate(), p);
    case Prior::Kind::exponential: {
      double m = 1.0;
      for (int i = 1; i <= p; ++i) m *= i * prior.scale();
      return m;
    }
  }
  fail(errc::invalid_argument, "prior_moment: unknown prior kind");
}

Prior truncate(const Prior& prior, double h) {
  require(std::isfinite(h) && h > 0, errc::invalid_argument, "truncate requires h > 0");
  switch (prior.kind()) {
    case Prior::Kind::point_masses: {
      std::vector<Atom> kept;
      double mass = 0;
      for (const auto& a : prior.atoms()) {
        if (a.theta <= h) {
          kept.push_back(a);
          mass += a.weight;
        }
      }
      if (kept.empty()) fail(errc::zero_mass_below_cutoff, "no prior mass at or below cutoff");
      for (auto& a : kept) a.weight /= mass;
      return Prior::point_masses(std::move(kept));
    }
    case Prior::Kind::uniform: {
      if (h >= prior.hi()) return prior;
      if (h <= prior.lo()) fail(errc::zero_mass_below_cutoff, "no prior mass at or below cutoff");
      return Prior::uniform(prior.lo(), h);
    }
    case Prior::Kind::gamma:
    case Prior::Kind::exponential: {
      // 2048 equispaced bins on [0, h]; each atom carries the exact bin mass
      // and sits at the bin barycenter, so the truncated mean is exact and
      // higher moments keep O(step^2) accuracy.
      double shape = prior.kind() == Prior::Kind::gamma ? prior.shape() : 1.0;
      double rate = prior.kind() == Prior::Kind::gamma ? prior.rate() : 1.0 / prior.scale();
      std::vector<Atom> atoms;
      atoms.reserve(kTruncationGridAtoms);
      const double step = h / kTruncationGridAtoms;
      double sum = 0;
      double cdf_lo = 0;
      double m1_lo = 0;
      const double mean = shape / rate;
      for (int j = 0; j < kTruncationGridAtoms; ++j) {
        double b = (j + 1) * step;
        double cdf_hi = boost::math::gamma_p(shape, rate * b);
        double m1_hi = mean * boost::math::gamma_p(shape + 1.0, rate * b);
        double mass = cdf_hi - cdf_lo;
        if (mass > 0) {
          double bary = std::clamp((m1_hi - m1_lo) / mass, j * step, b);
          atoms.push_back(Atom{bary, mass});
          sum += mass;
        }
        cdf_lo = cdf_hi;
        m1_lo = m1_hi;
      }
      require(sum > 0 && !atoms.empty(), errc::zero_mass_below_cutoff,
              "no prior mass at or below cutoff");
      for (auto& a : atoms) a.weight /= sum;
      return Prior::point_masses(std::move(atoms));
    }
  }
  fail(errc::invalid_argument, "truncate: unknown prior kind");
}

double tail_prob(const Prior& prior, double t) {
  require(t >= 0, errc::invalid_argument, "tail_prob requires t >= 0");
  switch (prior.kind()) {
    case Prior::Kind::point_masses: {
      double s = 0;
      for (const auto& a : prior.atoms())
        if (a.theta > t) s += a.weight;
      return s;
    }
    case Prior::Kind::uniform: {
      if (t <= prior.lo()) return 1.0;
      if (t >= prior.hi()) return 0.0;
      return (prior.hi() - t) / (prior.hi() - prior.lo());
    }
    case Prior::Kind::gamma:
      if (t == 0) return 1.0;
      return boost::math::gamma_q(prior.shape(), prior.rate() * t);
    case Prior::Kind::exponential:
      return std::exp(-t / prior.scale());
  }
  fail(errc::invalid_argument, "tail_prob: unknown prior kind");
}

Prior prior_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(errc::parse_error, std::string("prior JSON: ") + e.what());
  }
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "point_masses") {
      std::vector<Atom> atoms;
      for (const auto& a : j.at("atoms")) {
        if (a.is_array()) {
          atoms.push_back(Atom{a.at(0).get<double>(), a.at(1).get<double>()});
        } else {
          atoms.push_back(Atom{a.at("theta").get<double>(), a.at("weight").get<double>()});
        }
      }
      return Prior::point_masses(std::move(atoms));
    }
    if (kind == "uniform") return Prior::uniform(j.at("lo").get<double>(), j.at("hi").get<double>());
    if (kind == "gamma") return Prior::gamma(j.at("shape").get<double>(), j.at("rate").get<double>());
    if (kind == "exponential") return Prior::exponential(j.at("scale").get<double>());
    fail(errc::parse_error, "unknown prior kind: " + kind);
  } catch (const nlohmann::json::exception& e) {
    fail(errc::parse_error, std::string("prior JSON: ") + e.what());
  }
}

std::string prior_to_json(const Prior& prior) {
  nlohmann::json j;
  switch (prior.kind()) {
    case Prior::Kind::point_masses: {
      j["kind"] = "point_masses";
      auto arr = nlohmann::json::array();
      for (const auto& a : prior.atoms()) arr.push_back({a.theta, a.weight});
      j["atoms"] = arr;
      break;
    }
    case Prior::Kind::uniform:
      j["kind"] = "uniform";
      j["lo"] = prior.lo();
      j["hi"] = prior.hi();
      break;
    case Prior::Kind::gamma:
      j["kind"] = "gamma";
      j["shape"] = prior.shape();
      j["rate"] = prior.rate();
      break;
    case Prior::Kind::exponential:
      j["kind"] = "exponential";
      j["scale"] = prior.scale();
      break;
  }
  return j.dump();
}

PriorClassTag prior_class_tag(const Prior& prior) {
  if (prior.bounded()) {
    double h = prior.support_max();
    return PriorClassTag::bounded(h > 0 ? h : 1.0);
  }
  if (prior.kind() == Prior::Kind::exponential) {
    return PriorClassTag::sub_exponential(prior.scale());
  }
  // Gamma(shape, rate): P(theta >= t) <= 2 e^{-t/s} holds with this scale.
  return PriorClassTag::sub_exponential(2.0 * std::max(prior.shape(), 1.0) / prior.rate());
}

}  // namespace ebpm
