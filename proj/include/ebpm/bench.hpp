#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ebpm/estimators.hpp"
#include "ebpm/prior.hpp"
#include "ebpm/smooth.hpp"

namespace ebpm {

struct EstimatorSpec {
  std::string name;  // mom | robbins | erm | erm-clipped | npmle-plugin | naive-plugin | oracle
  std::optional<std::pair<double, double>> clip;
};

struct FunctionalSpec {
  enum class Kind { moment, smooth };
  Kind kind = Kind::moment;
  int k = 1;             // moment order
  std::string name;      // smooth: named functional
  double h = 1;          // smooth: approximation domain [0, h]
  int degree = -1;       // smooth: -1 means select_degree(n, degree_c)
};

struct ExperimentConfig {
  Prior prior = Prior::uniform(0, 10);
  FunctionalSpec functional;
  std::vector<EstimatorSpec> estimators;
  std::vector<std::int64_t> n_grid = {100, 316, 1000, 3162, 10000, 31623, 100000};
  int replicates = 50;
  std::uint64_t seed = 1;
  // solver knobs
  int grid_points = 400;
  double tol = 1e-7;
  int max_iter = 5000;
  double degree_c = 0.5;
  int threads = 0;  // 0: hardware concurrency
  bool individual_crosscheck = false;
};

ExperimentConfig config_from_json(const std::string& text);

struct RegretRecord {
  std::string estimator;
  std::int64_t n = 0;
  double mean_regret = 0;  // mean over replicates of the total regret
  double se_regret = 0;
  double rmse = 0;  // mean over replicates of sqrt(total squared error / n)
  double mmse = 0;
  int replicates = 0;
  int failed = 0;
};

/// A fitted estimator evaluable at integer points; the common face the
/// harness, the C ABI, and the CLI all consume.
class FittedEstimator {
 public:
  virtual ~FittedEstimator() = default;
  virtual double eval(std::int64_t x) const = 0;
};

/// Fit one of the named estimators on a sample. k is the moment order.
/// "oracle" requires the true prior. erm-clipped without explicit clip bounds
/// uses [0, h^k] for bounded priors.
std::unique_ptr<FittedEstimator> fit_named_estimator(const SampleCounts& counts,
                                                     const EstimatorSpec& spec, int k,
                                                     const ExperimentConfig& cfg,
                                                     const Prior* true_prior);

struct ReplicateOutcome {
  double total_sq_err = 0;   // sum_i (T_i - l(theta_i))^2
  double oracle_total = 0;   // n * mmse
  double last_sq_err = 0;    // (T_n - l(theta_n))^2, for the individual-regret cross-check
  bool ok = false;
  std::string error;
};

/// One Monte-Carlo replicate: draw the channel, fit, and score. The regret
/// estimate is total_sq_err - oracle_total.
ReplicateOutcome replicate_regret(const ExperimentConfig& cfg, const EstimatorSpec& estimator,
                                  std::int64_t n, std::uint64_t seed, double mmse_value);

std::vector<RegretRecord> run_experiment(const ExperimentConfig& cfg);

/// The mmse reference used for every cell of a config (computed once).
double config_mmse(const ExperimentConfig& cfg);

/// Per-replicate seed: hash of (base seed, estimator name, n, replicate).
std::uint64_t replicate_seed(std::uint64_t base, const std::string& estimator, std::int64_t n,
                             int replicate);

struct RateDiagnostic {
  double slope = 0;
  double r2 = 0;
};

/// Least-squares slope of log(mean total regret) against the log of the
/// theoretical rate expression: (log n / log log n)^{k+1} for the bounded
/// class, (log n)^{2k+1} for the subexponential class.
RateDiagnostic rate_diagnostic(std::span<const RegretRecord> records, const PriorClassTag& cls,
                               int k);

void emit_csv(std::span<const RegretRecord> records, const std::string& path);
std::vector<RegretRecord> read_records_csv(const std::string& path);

/// records.csv plus regret.svg / rmse.svg under out_dir.
void write_experiment_outputs(std::span<const RegretRecord> records, const std::string& out_dir);

}  // namespace ebpm
