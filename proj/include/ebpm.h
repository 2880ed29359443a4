/* C interface to the empirical-Bayes Poisson mixture library.
 *
 * Every function returns an ebpm_status; results come back through out
 * pointers. Handles are opaque and must be released with the matching _free
 * call. On failure, ebpm_last_error() returns a thread-local description of
 * the most recent error.
 */
#ifndef EBPM_H
#define EBPM_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ebpm_status {
  EBPM_OK = 0,
  EBPM_ERR_INVALID_ARGUMENT = 1,
  EBPM_ERR_ZERO_MASS_BELOW_CUTOFF = 2,
  EBPM_ERR_UNSUPPORTED_POINT = 3,
  EBPM_ERR_EMPTY_SAMPLE = 4,
  EBPM_ERR_INVALID_BOUNDS = 5,
  EBPM_ERR_SUPPORT_MISMATCH = 6,
  EBPM_ERR_NO_PROGRESS = 7,
  EBPM_ERR_NON_FINITE_FUNCTION = 8,
  EBPM_ERR_INSUFFICIENT_POINTS = 9,
  EBPM_ERR_IO = 10,
  EBPM_ERR_PARSE = 11,
  EBPM_ERR_UNKNOWN = 127
} ebpm_status;

const char* ebpm_status_name(ebpm_status status);

/* Message for the most recent failure on this thread. */
const char* ebpm_last_error(void);

typedef struct ebpm_prior ebpm_prior;
typedef struct ebpm_counts ebpm_counts;
typedef struct ebpm_fit ebpm_fit;

/* ---- priors ---------------------------------------------------------- */

/* Parse a prior from its JSON description, e.g.
 * {"kind":"uniform","lo":0,"hi":10}. */
ebpm_status ebpm_prior_parse(const char* json, ebpm_prior** out);
void ebpm_prior_free(ebpm_prior* prior);

ebpm_status ebpm_prior_moment(const ebpm_prior* prior, int p, double* out);
ebpm_status ebpm_prior_tail_prob(const ebpm_prior* prior, double t, double* out);
ebpm_status ebpm_prior_truncate(const ebpm_prior* prior, double h, ebpm_prior** out);
ebpm_status ebpm_sample_theta(const ebpm_prior* prior, int64_t n, uint64_t seed, double* thetas);
ebpm_status ebpm_sample_channel(const ebpm_prior* prior, int64_t n, uint64_t seed, double* thetas,
                                int64_t* xs);

/* ---- exact Poisson-mixture oracle ------------------------------------ */

ebpm_status ebpm_mixture_pmf(const ebpm_prior* prior, int64_t x, double* out);
ebpm_status ebpm_bayes_estimate(const ebpm_prior* prior, int k, int64_t x, double* out);
ebpm_status ebpm_mmse(const ebpm_prior* prior, int k, double* out);

/* ---- estimators ------------------------------------------------------ */

ebpm_status ebpm_counts_create(const int64_t* xs, int64_t n, ebpm_counts** out);
void ebpm_counts_free(ebpm_counts* counts);

/* estimator: "mom" | "robbins" | "erm" | "erm-clipped" | "npmle-plugin" |
 * "naive-plugin". Pass has_clip=1 to clip the estimates to [clip_lo, clip_hi]
 * (mandatory for erm-clipped). Robbins fits evaluate only at observed x. */
ebpm_status ebpm_fit_create(const ebpm_counts* counts, const char* estimator, int k, int has_clip,
                            double clip_lo, double clip_hi, ebpm_fit** out);
ebpm_status ebpm_fit_eval(const ebpm_fit* fit, int64_t x, double* out);
void ebpm_fit_free(ebpm_fit* fit);

/* ---- smooth functionals ---------------------------------------------- */

/* Chebyshev approximation of a named functional ("cube" | "exp" | "sqrt1p" |
 * "lipschitz-abs") on [0, h]. coefs must hold degree+1 doubles. */
ebpm_status ebpm_poly_approx_named(const char* name, double h, int degree, double* coefs,
                                   double* sup_residual);

/* ---- benchmark harness ------------------------------------------------ */

/* Run a full experiment from its JSON config; writes records.csv, regret.svg
 * and rmse.svg under out_dir. */
ebpm_status ebpm_bench_run(const char* config_json, const char* out_dir);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* EBPM_H */
