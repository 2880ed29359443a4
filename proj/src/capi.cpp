#include "ebpm.h"

#include <cstring>
#include <memory>
#include <span>
#include <string>

#include "ebpm/bench.hpp"
#include "ebpm/error.hpp"
#include "ebpm/estimators.hpp"
#include "ebpm/mindist.hpp"
#include "ebpm/poisson_oracle.hpp"
#include "ebpm/prior.hpp"
#include "ebpm/smooth.hpp"

struct ebpm_prior {
  ebpm::Prior prior;
};

struct ebpm_counts {
  ebpm::SampleCounts counts;
};

struct ebpm_fit {
  std::unique_ptr<ebpm::FittedEstimator> fit;
};

namespace {

thread_local std::string g_last_error;

ebpm_status to_status(ebpm::errc code) {
  switch (code) {
    case ebpm::errc::ok: return EBPM_OK;
    case ebpm::errc::invalid_argument: return EBPM_ERR_INVALID_ARGUMENT;
    case ebpm::errc::zero_mass_below_cutoff: return EBPM_ERR_ZERO_MASS_BELOW_CUTOFF;
    case ebpm::errc::unsupported_point: return EBPM_ERR_UNSUPPORTED_POINT;
    case ebpm::errc::empty_sample: return EBPM_ERR_EMPTY_SAMPLE;
    case ebpm::errc::invalid_bounds: return EBPM_ERR_INVALID_BOUNDS;
    case ebpm::errc::support_mismatch: return EBPM_ERR_SUPPORT_MISMATCH;
    case ebpm::errc::no_progress: return EBPM_ERR_NO_PROGRESS;
    case ebpm::errc::non_finite_function: return EBPM_ERR_NON_FINITE_FUNCTION;
    case ebpm::errc::insufficient_points: return EBPM_ERR_INSUFFICIENT_POINTS;
    case ebpm::errc::io_error: return EBPM_ERR_IO;
    case ebpm::errc::parse_error: return EBPM_ERR_PARSE;
  }
  return EBPM_ERR_UNKNOWN;
}

template <typename Fn>
ebpm_status guarded(Fn&& fn) {
  try {
    fn();
    return EBPM_OK;
  } catch (const ebpm::error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return EBPM_ERR_UNKNOWN;
  } catch (...) {
    g_last_error = "unknown error";
    return EBPM_ERR_UNKNOWN;
  }
}

ebpm_status invalid(const char* what) {
  g_last_error = what;
  return EBPM_ERR_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

const char* ebpm_status_name(ebpm_status status) {
  switch (status) {
    case EBPM_OK: return "ok";
    case EBPM_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case EBPM_ERR_ZERO_MASS_BELOW_CUTOFF: return "zero_mass_below_cutoff";
    case EBPM_ERR_UNSUPPORTED_POINT: return "unsupported_point";
    case EBPM_ERR_EMPTY_SAMPLE: return "empty_sample";
    case EBPM_ERR_INVALID_BOUNDS: return "invalid_bounds";
    case EBPM_ERR_SUPPORT_MISMATCH: return "support_mismatch";
    case EBPM_ERR_NO_PROGRESS: return "no_progress";
    case EBPM_ERR_NON_FINITE_FUNCTION: return "non_finite_function";
    case EBPM_ERR_INSUFFICIENT_POINTS: return "insufficient_points";
    case EBPM_ERR_IO: return "io_error";
    case EBPM_ERR_PARSE: return "parse_error";
    case EBPM_ERR_UNKNOWN: break;
  }
  return "unknown";
}

const char* ebpm_last_error(void) { return g_last_error.c_str(); }

ebpm_status ebpm_prior_parse(const char* json, ebpm_prior** out) {
  if (json == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] { *out = new ebpm_prior{ebpm::prior_from_json(json)}; });
}

void ebpm_prior_free(ebpm_prior* prior) { delete prior; }

ebpm_status ebpm_prior_moment(const ebpm_prior* prior, int p, double* out) {
  if (prior == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] { *out = ebpm::prior_moment(prior->prior, p); });
}

ebpm_status ebpm_prior_tail_prob(const ebpm_prior* prior, double t, double* out) {
  if (prior == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] { *out = ebpm::tail_prob(prior->prior, t); });
}

ebpm_status ebpm_prior_truncate(const ebpm_prior* prior, double h, ebpm_prior** out) {
  if (prior == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] { *out = new ebpm_prior{ebpm::truncate(prior->prior, h)}; });
}

ebpm_status ebpm_sample_theta(const ebpm_prior* prior, int64_t n, uint64_t seed, double* thetas) {
  if (prior == nullptr || thetas == nullptr) return invalid("null argument");
  return guarded([&] {
    auto draws = ebpm::sample_theta(prior->prior, n, seed);
    std::memcpy(thetas, draws.data(), draws.size() * sizeof(double));
  });
}

ebpm_status ebpm_sample_channel(const ebpm_prior* prior, int64_t n, uint64_t seed, double* thetas,
                                int64_t* xs) {
  if (prior == nullptr || thetas == nullptr || xs == nullptr) return invalid("null argument");
  return guarded([&] {
    auto sample = ebpm::sample_channel(prior->prior, n, seed);
    std::memcpy(thetas, sample.thetas.data(), sample.thetas.size() * sizeof(double));
    std::memcpy(xs, sample.xs.data(), sample.xs.size() * sizeof(int64_t));
  });
}

ebpm_status ebpm_mixture_pmf(const ebpm_prior* prior, int64_t x, double* out) {
  if (prior == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] { *out = ebpm::mixture_pmf(prior->prior, x); });
}

ebpm_status ebpm_bayes_estimate(const ebpm_prior* prior, int k, int64_t x, double* out) {
  if (prior == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] { *out = ebpm::bayes_estimate(prior->prior, k, x); });
}

ebpm_status ebpm_mmse(const ebpm_prior* prior, int k, double* out) {
  if (prior == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] { *out = ebpm::mmse(prior->prior, k); });
}

ebpm_status ebpm_counts_create(const int64_t* xs, int64_t n, ebpm_counts** out) {
  if (xs == nullptr || out == nullptr) return invalid("null argument");
  if (n <= 0) {
    g_last_error = "empty sample";
    return EBPM_ERR_EMPTY_SAMPLE;
  }
  return guarded([&] {
    std::span<const int64_t> view(xs, static_cast<size_t>(n));
    *out = new ebpm_counts{ebpm::tabulate(view)};
  });
}

void ebpm_counts_free(ebpm_counts* counts) { delete counts; }

ebpm_status ebpm_fit_create(const ebpm_counts* counts, const char* estimator, int k, int has_clip,
                            double clip_lo, double clip_hi, ebpm_fit** out) {
  if (counts == nullptr || estimator == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] {
    ebpm::EstimatorSpec spec;
    spec.name = estimator;
    if (has_clip != 0) spec.clip = std::make_pair(clip_lo, clip_hi);
    ebpm::require(spec.name != "oracle", ebpm::errc::invalid_argument,
                  "the oracle estimator is not available through the C fit interface");
    ebpm::ExperimentConfig cfg;  // solver defaults
    cfg.functional.k = k;
    auto fit = ebpm::fit_named_estimator(counts->counts, spec, k, cfg, nullptr);
    *out = new ebpm_fit{std::move(fit)};
  });
}

ebpm_status ebpm_fit_eval(const ebpm_fit* fit, int64_t x, double* out) {
  if (fit == nullptr || out == nullptr) return invalid("null argument");
  return guarded([&] { *out = fit->fit->eval(x); });
}

void ebpm_fit_free(ebpm_fit* fit) { delete fit; }

ebpm_status ebpm_poly_approx_named(const char* name, double h, int degree, double* coefs,
                                   double* sup_residual) {
  if (name == nullptr || coefs == nullptr || sup_residual == nullptr) {
    return invalid("null argument");
  }
  return guarded([&] {
    auto f = ebpm::named_functional(name, h);
    ebpm::PolyApprox approx = ebpm::chebyshev_approx(f, h, degree);
    std::memcpy(coefs, approx.coefficients.data(), approx.coefficients.size() * sizeof(double));
    *sup_residual = approx.sup_residual;
  });
}

ebpm_status ebpm_bench_run(const char* config_json, const char* out_dir) {
  if (config_json == nullptr || out_dir == nullptr) return invalid("null argument");
  return guarded([&] {
    ebpm::ExperimentConfig cfg = ebpm::config_from_json(config_json);
    auto records = ebpm::run_experiment(cfg);
    ebpm::write_experiment_outputs(records, out_dir);
  });
}

}  // extern "C"
