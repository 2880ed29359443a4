#include "ebpm/bench.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "ebpm/error.hpp"
#include "ebpm/format.hpp"
#include "ebpm/mindist.hpp"
#include "ebpm/poisson_oracle.hpp"
#include "ebpm/rng.hpp"

namespace ebpm {

namespace {

const std::set<std::string> kMomentEstimators = {"mom",          "robbins",      "erm",
                                                 "erm-clipped",  "npmle-plugin", "naive-plugin",
                                                 "oracle"};
const std::set<std::string> kSmoothEstimators = {"robbins", "erm", "npmle-plugin", "oracle"};

struct Kahan {
  double sum = 0, comp = 0;
  void add(double v) {
    double y = v - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

class MomFitted final : public FittedEstimator {
 public:
  explicit MomFitted(int k) : k_(k) {}
  double eval(std::int64_t x) const override { return mom_estimate(x, k_); }

 private:
  int k_;
};

class MapFitted final : public FittedEstimator {
 public:
  MapFitted(std::map<std::int64_t, double> fit, std::optional<std::pair<double, double>> clip)
      : fit_(std::move(fit)), clip_(clip) {}
  double eval(std::int64_t x) const override {
    auto it = fit_.find(x);
    if (it == fit_.end()) {
      fail(errc::unsupported_point,
           "robbins estimate is defined on observed x only (x=" + std::to_string(x) + ")");
    }
    double v = it->second;
    if (clip_) v = std::min(clip_->second, std::max(clip_->first, v));
    return v;
  }

 private:
  std::map<std::int64_t, double> fit_;
  std::optional<std::pair<double, double>> clip_;
};

class StepFitted final : public FittedEstimator {
 public:
  StepFitted(StepEstimator step, std::optional<std::pair<double, double>> clip)
      : step_(std::move(step)), clip_(clip) {}
  double eval(std::int64_t x) const override {
    double v = step_(x);
    if (clip_) v = std::min(clip_->second, std::max(clip_->first, v));
    return v;
  }

 private:
  StepEstimator step_;
  std::optional<std::pair<double, double>> clip_;
};

class OracleMomentFitted final : public FittedEstimator {
 public:
  OracleMomentFitted(const Prior& prior, int k) : cache_(prior), k_(k) {}
  double eval(std::int64_t x) const override { return bayes_estimate(cache_, k_, x); }

 private:
  MixturePmfCache cache_;
  int k_;
};

class OracleSmoothFitted final : public FittedEstimator {
 public:
  OracleSmoothFitted(Prior prior, std::function<double(double)> f)
      : prior_(std::move(prior)), f_(std::move(f)) {}
  double eval(std::int64_t x) const override { return posterior_mean(prior_, f_, x); }

 private:
  Prior prior_;
  std::function<double(double)> f_;
};

class SmoothFitted final : public FittedEstimator {
 public:
  SmoothFitted(const SampleCounts& counts, PolyApprox approx, SmoothBackend backend)
      : est_(counts, std::move(approx), std::move(backend)) {}
  double eval(std::int64_t x) const override { return est_(x); }

 private:
  SmoothEstimator est_;
};

PriorClassTag grid_class_for(const Prior* true_prior) {
  if (true_prior != nullptr) return prior_class_tag(*true_prior);
  return PriorClassTag{PriorClassTag::Kind::sub_exponential, 1.0};
}

int effective_degree(const ExperimentConfig& cfg, std::int64_t n) {
  if (cfg.functional.degree >= 0) return cfg.functional.degree;
  return select_degree(n, cfg.degree_c);
}

}  // namespace

std::unique_ptr<FittedEstimator> fit_named_estimator(const SampleCounts& counts,
                                                     const EstimatorSpec& spec, int k,
                                                     const ExperimentConfig& cfg,
                                                     const Prior* true_prior) {
  const bool smooth = cfg.functional.kind == FunctionalSpec::Kind::smooth;
  if (smooth) {
    require(kSmoothEstimators.count(spec.name) == 1, errc::invalid_argument,
            "estimator '" + spec.name + "' has no smooth-functional backend");
    auto f = named_functional(cfg.functional.name, cfg.functional.h);
    if (spec.name == "oracle") {
      require(true_prior != nullptr, errc::invalid_argument, "oracle requires the true prior");
      return std::make_unique<OracleSmoothFitted>(*true_prior, std::move(f));
    }
    int degree = effective_degree(cfg, counts.n);
    PolyApprox approx = chebyshev_approx(f, cfg.functional.h, degree);
    SmoothBackend backend;
    if (spec.name == "robbins") {
      backend = SmoothBackend::robbins();
    } else if (spec.name == "erm") {
      backend = SmoothBackend::erm();
    } else {
      backend = SmoothBackend::npmle_plugin(cfg.grid_points, cfg.tol, cfg.max_iter);
      backend.grid_class = grid_class_for(true_prior);
    }
    return std::make_unique<SmoothFitted>(counts, std::move(approx), std::move(backend));
  }

  require(kMomentEstimators.count(spec.name) == 1, errc::invalid_argument,
          "unknown estimator: " + spec.name);
  if (spec.name == "mom") return std::make_unique<MomFitted>(k);
  if (spec.name == "robbins") {
    return std::make_unique<MapFitted>(robbins_fit(counts, k), spec.clip);
  }
  if (spec.name == "erm") {
    return std::make_unique<StepFitted>(erm_fit(counts, k), spec.clip);
  }
  if (spec.name == "erm-clipped") {
    std::pair<double, double> bounds;
    if (spec.clip) {
      bounds = *spec.clip;
    } else {
      require(true_prior != nullptr && true_prior->bounded(), errc::invalid_argument,
              "erm-clipped without explicit bounds requires a bounded prior");
      bounds = {0.0, std::pow(true_prior->support_max(), k)};
    }
    return std::make_unique<StepFitted>(erm_fit_clipped(counts, k, bounds.first, bounds.second),
                                        std::nullopt);
  }
  if (spec.name == "oracle") {
    require(true_prior != nullptr, errc::invalid_argument, "oracle requires the true prior");
    return std::make_unique<OracleMomentFitted>(*true_prior, k);
  }
  // npmle-plugin / naive-plugin
  auto grid = make_grid(counts.x_max, grid_class_for(true_prior), cfg.grid_points);
  auto [fitted, report] = npmle_fit(counts, grid, cfg.tol, cfg.max_iter);
  StepEstimator step = spec.name == "npmle-plugin" ? plugin_bayes(fitted, k, counts.x_max)
                                                   : naive_plugin(fitted, k, counts.x_max);
  return std::make_unique<StepFitted>(std::move(step), spec.clip);
}

std::uint64_t replicate_seed(std::uint64_t base, const std::string& estimator, std::int64_t n,
                             int replicate) {
  std::uint64_t h = hash_u64(base, static_cast<std::uint64_t>(n));
  h = hash_u64(h, static_cast<std::uint64_t>(replicate));
  return hash_bytes(h, estimator);
}

double config_mmse(const ExperimentConfig& cfg) {
  if (cfg.functional.kind == FunctionalSpec::Kind::moment) {
    return mmse(cfg.prior, cfg.functional.k);
  }
  return mmse_functional(cfg.prior, named_functional(cfg.functional.name, cfg.functional.h));
}

ReplicateOutcome replicate_regret(const ExperimentConfig& cfg, const EstimatorSpec& estimator,
                                  std::int64_t n, std::uint64_t seed, double mmse_value) {
  ReplicateOutcome out;
  try {
    ChannelSample sample = sample_channel(cfg.prior, n, seed);
    SampleCounts counts = tabulate(sample.xs);
    auto fit = fit_named_estimator(counts, estimator, cfg.functional.k, cfg, &cfg.prior);

    const bool smooth = cfg.functional.kind == FunctionalSpec::Kind::smooth;
    std::function<double(double)> target;
    if (smooth) target = named_functional(cfg.functional.name, cfg.functional.h);

    // Estimates depend on the sample only through x; evaluate per distinct
    // value to keep the per-replicate cost at O(n + support * fit).
    std::map<std::int64_t, double> by_x;
    for (const auto& [x, nx] : counts.counts) by_x[x] = fit->eval(x);

    Kahan total;
    double last = 0;
    for (std::size_t i = 0; i < sample.xs.size(); ++i) {
      double truth = smooth ? target(sample.thetas[i])
                            : std::pow(sample.thetas[i], cfg.functional.k);
      double err = by_x[sample.xs[i]] - truth;
      last = err * err;
      total.add(last);
    }
    out.total_sq_err = total.sum;
    out.oracle_total = static_cast<double>(n) * mmse_value;
    out.last_sq_err = last;
    out.ok = true;
  } catch (const error& e) {
    out.ok = false;
    out.error = std::string(errc_name(e.code())) + ": " + e.what();
  }
  return out;
}

std::vector<RegretRecord> run_experiment(const ExperimentConfig& cfg) {
  require(cfg.replicates >= 1, errc::invalid_argument, "replicates must be >= 1");
  require(!cfg.estimators.empty(), errc::invalid_argument, "no estimators configured");
  require(!cfg.n_grid.empty(), errc::invalid_argument, "empty n grid");
  for (std::size_t i = 0; i + 1 < cfg.n_grid.size(); ++i) {
    require(cfg.n_grid[i] < cfg.n_grid[i + 1], errc::invalid_argument,
            "n grid must be strictly increasing");
  }
  const auto& valid = cfg.functional.kind == FunctionalSpec::Kind::smooth ? kSmoothEstimators
                                                                          : kMomentEstimators;
  for (const auto& est : cfg.estimators) {
    require(valid.count(est.name) == 1, errc::invalid_argument,
            "invalid estimator name: " + est.name);
  }

  const double mmse_value = config_mmse(cfg);
  unsigned threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                     : std::max(1u, std::thread::hardware_concurrency());

  std::vector<RegretRecord> records;
  for (const auto& est : cfg.estimators) {
    for (std::int64_t n : cfg.n_grid) {
      const int reps = cfg.replicates;
      std::vector<ReplicateOutcome> outcomes(static_cast<std::size_t>(reps));
      auto worker = [&](unsigned t0) {
        for (int r = static_cast<int>(t0); r < reps; r += static_cast<int>(threads)) {
          outcomes[static_cast<std::size_t>(r)] =
              replicate_regret(cfg, est, n, replicate_seed(cfg.seed, est.name, n, r), mmse_value);
        }
      };
      if (threads <= 1 || reps == 1) {
        worker(0);
      } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
      }

      // Aggregate in fixed replicate order so scheduling cannot change output.
      Kahan sum_regret, sum_rmse;
      std::vector<double> regrets;
      int failed = 0;
      for (const auto& o : outcomes) {
        if (!o.ok) {
          ++failed;
          continue;
        }
        double reg = o.total_sq_err - o.oracle_total;
        regrets.push_back(reg);
        sum_regret.add(reg);
        sum_rmse.add(std::sqrt(o.total_sq_err / static_cast<double>(n)));
      }
      RegretRecord rec;
      rec.estimator = est.name;
      rec.n = n;
      rec.mmse = mmse_value;
      rec.replicates = static_cast<int>(regrets.size());
      rec.failed = failed;
      if (!regrets.empty()) {
        double m = sum_regret.sum / static_cast<double>(regrets.size());
        rec.mean_regret = m;
        rec.rmse = sum_rmse.sum / static_cast<double>(regrets.size());
        if (regrets.size() > 1) {
          Kahan ss;
          for (double r : regrets) ss.add((r - m) * (r - m));
          rec.se_regret = std::sqrt(ss.sum / (static_cast<double>(regrets.size()) - 1.0) /
                                    static_cast<double>(regrets.size()));
        }
      }
      records.push_back(std::move(rec));
    }
  }
  std::sort(records.begin(), records.end(), [](const RegretRecord& a, const RegretRecord& b) {
    return a.estimator != b.estimator ? a.estimator < b.estimator : a.n < b.n;
  });
  return records;
}

RateDiagnostic rate_diagnostic(std::span<const RegretRecord> records, const PriorClassTag& cls,
                               int k) {
  require(k >= 1, errc::invalid_argument, "rate_diagnostic requires k >= 1");
  std::vector<std::pair<double, double>> pts;  // (log rate(n), log regret)
  std::set<std::int64_t> seen;
  for (const auto& r : records) {
    if (r.mean_regret <= 0 || r.n < 3 || seen.count(r.n)) continue;
    seen.insert(r.n);
    double log_n = std::log(static_cast<double>(r.n));
    double z = cls.kind == PriorClassTag::Kind::bounded
                   ? (k + 1) * (std::log(log_n) - std::log(std::log(log_n)))
                   : (2 * k + 1) * std::log(log_n);
    pts.emplace_back(z, std::log(r.mean_regret));
  }
  if (pts.size() < 4) {
    fail(errc::insufficient_points, "rate_diagnostic requires >= 4 usable n values");
  }
  double mz = 0, my = 0;
  for (auto& [z, y] : pts) {
    mz += z;
    my += y;
  }
  mz /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double szz = 0, szy = 0, syy = 0;
  for (auto& [z, y] : pts) {
    szz += (z - mz) * (z - mz);
    szy += (z - mz) * (y - my);
    syy += (y - my) * (y - my);
  }
  RateDiagnostic d;
  d.slope = szy / szz;
  double ss_res = syy - d.slope * szy;
  d.r2 = syy == 0 ? 1.0 : 1.0 - ss_res / syy;
  return d;
}

ExperimentConfig config_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(errc::parse_error, std::string("config JSON: ") + e.what());
  }
  try {
    ExperimentConfig cfg;
    cfg.prior = prior_from_json(j.at("prior").dump());
    const auto& fj = j.at("functional");
    std::string kind = fj.value("kind", fj.contains("k") ? "moment" : "smooth");
    if (kind == "moment") {
      cfg.functional.kind = FunctionalSpec::Kind::moment;
      cfg.functional.k = fj.at("k").get<int>();
      require(cfg.functional.k >= 1, errc::parse_error, "functional k must be >= 1");
    } else if (kind == "smooth") {
      cfg.functional.kind = FunctionalSpec::Kind::smooth;
      cfg.functional.name = fj.at("name").get<std::string>();
      cfg.functional.h = fj.at("h").get<double>();
      cfg.functional.degree = fj.value("degree", -1);
    } else {
      fail(errc::parse_error, "functional kind must be moment or smooth");
    }
    for (const auto& e : j.at("estimators")) {
      EstimatorSpec spec;
      if (e.is_string()) {
        spec.name = e.get<std::string>();
      } else {
        spec.name = e.at("name").get<std::string>();
        if (e.contains("clip")) {
          spec.clip = std::make_pair(e.at("clip").at(0).get<double>(),
                                     e.at("clip").at(1).get<double>());
        }
      }
      cfg.estimators.push_back(std::move(spec));
    }
    if (j.contains("n_grid")) cfg.n_grid = j.at("n_grid").get<std::vector<std::int64_t>>();
    cfg.replicates = j.value("replicates", cfg.replicates);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.grid_points = j.value("grid_points", cfg.grid_points);
    cfg.tol = j.value("tol", cfg.tol);
    cfg.max_iter = j.value("max_iter", cfg.max_iter);
    cfg.degree_c = j.value("degree_c", cfg.degree_c);
    cfg.threads = j.value("threads", cfg.threads);
    cfg.individual_crosscheck = j.value("individual_crosscheck", cfg.individual_crosscheck);
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    fail(errc::parse_error, std::string("config JSON: ") + e.what());
  }
}

namespace {

std::string record_line(const RegretRecord& r) {
  std::string line = r.estimator;
  line += ',';
  line += std::to_string(r.n);
  line += ',';
  line += format_double(r.mean_regret);
  line += ',';
  line += format_double(r.se_regret);
  line += ',';
  line += format_double(r.rmse);
  line += ',';
  line += format_double(r.mmse);
  line += ',';
  line += std::to_string(r.replicates);
  line += ',';
  line += std::to_string(r.failed);
  return line;
}

constexpr const char* kCsvHeader = "estimator,n,mean_regret,se_regret,rmse,mmse,replicates,failed";

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

void emit_csv(std::span<const RegretRecord> records, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::io_error, "cannot open for writing: " + path);
  out << kCsvHeader << '\n';
  for (const auto& r : records) out << record_line(r) << '\n';
  if (!out) fail(errc::io_error, "write failed: " + path);
}

std::vector<RegretRecord> read_records_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(errc::io_error, "cannot open for reading: " + path);
  std::string line;
  require(static_cast<bool>(std::getline(in, line)), errc::parse_error, "empty CSV: " + path);
  require(line == kCsvHeader, errc::parse_error, "bad CSV header in " + path);
  std::vector<RegretRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto f = split_csv(line);
    require(f.size() == 8, errc::parse_error, "bad CSV row in " + path);
    RegretRecord r;
    r.estimator = f[0];
    r.n = parse_int(f[1]);
    r.mean_regret = parse_double(f[2]);
    r.se_regret = parse_double(f[3]);
    r.rmse = parse_double(f[4]);
    r.mmse = parse_double(f[5]);
    r.replicates = static_cast<int>(parse_int(f[6]));
    r.failed = static_cast<int>(parse_int(f[7]));
    records.push_back(std::move(r));
  }
  return records;
}

namespace {

// Minimal static SVG: one log-x line chart per metric.
struct Series {
  std::string name;
  std::vector<std::pair<double, double>> pts;  // (n, value), value > 0
};

std::string svg_chart(const std::vector<Series>& series, const std::string& title,
                      const std::string& y_label) {
  const double width = 760, height = 520;
  const double ml = 70, mr = 160, mt = 40, mb = 50;
  const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf"};

  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& s : series) {
    for (auto [x, y] : s.pts) {
      xmin = std::min(xmin, std::log10(x));
      xmax = std::max(xmax, std::log10(x));
      ymin = std::min(ymin, std::log10(y));
      ymax = std::max(ymax, std::log10(y));
    }
  }
  if (xmin > xmax) {
    xmin = 0;
    xmax = 1;
    ymin = 0;
    ymax = 1;
  }
  if (xmax - xmin < 1e-9) xmax = xmin + 1;
  if (ymax - ymin < 1e-9) ymax = ymin + 1;
  auto sx = [&](double lx) { return ml + (lx - xmin) / (xmax - xmin) * (width - ml - mr); };
  auto sy = [&](double ly) { return height - mb - (ly - ymin) / (ymax - ymin) * (height - mt - mb); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << ml << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\">" << title
      << "</text>\n";
  // axes
  out << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr << "\" y2=\""
      << height - mb << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << height - mb
      << "\" stroke=\"black\"/>\n";
  for (int d = static_cast<int>(std::ceil(xmin)); d <= static_cast<int>(std::floor(xmax)); ++d) {
    double x = sx(d);
    out << "<line x1=\"" << format_double(x) << "\" y1=\"" << height - mb << "\" x2=\""
        << format_double(x) << "\" y2=\"" << height - mb + 5 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << format_double(x - 12) << "\" y=\"" << height - mb + 20
        << "\" font-family=\"sans-serif\" font-size=\"12\">1e" << d << "</text>\n";
  }
  for (int d = static_cast<int>(std::ceil(ymin)); d <= static_cast<int>(std::floor(ymax)); ++d) {
    double y = sy(d);
    out << "<line x1=\"" << ml - 5 << "\" y1=\"" << format_double(y) << "\" x2=\"" << ml
        << "\" y2=\"" << format_double(y) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << ml - 48 << "\" y=\"" << format_double(y + 4)
        << "\" font-family=\"sans-serif\" font-size=\"12\">1e" << d << "</text>\n";
  }
  out << "<text x=\"" << (width - mr + ml) / 2 << "\" y=\"" << height - 12
      << "\" font-family=\"sans-serif\" font-size=\"13\">n</text>\n";
  out << "<text x=\"14\" y=\"" << mt - 10 << "\" font-family=\"sans-serif\" font-size=\"13\">"
      << y_label << "</text>\n";

  int ci = 0;
  for (const auto& s : series) {
    const char* color = colors[ci % 7];
    std::string path;
    for (std::size_t i = 0; i < s.pts.size(); ++i) {
      path += (i == 0 ? "M" : " L");
      path += format_double(sx(std::log10(s.pts[i].first)));
      path += ' ';
      path += format_double(sy(std::log10(s.pts[i].second)));
    }
    if (!path.empty()) {
      out << "<path d=\"" << path << "\" fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"2\"/>\n";
    }
    double ly = mt + 18.0 * ci;
    out << "<line x1=\"" << width - mr + 10 << "\" y1=\"" << format_double(ly) << "\" x2=\""
        << width - mr + 34 << "\" y2=\"" << format_double(ly) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << width - mr + 40 << "\" y=\"" << format_double(ly + 4)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.name << "</text>\n";
    ++ci;
  }
  out << "</svg>\n";
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(errc::io_error, "cannot open for writing: " + path);
  out << content;
  if (!out) fail(errc::io_error, "write failed: " + path);
}

}  // namespace

void write_experiment_outputs(std::span<const RegretRecord> records, const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) fail(errc::io_error, "cannot create directory: " + out_dir);

  emit_csv(records, out_dir + "/records.csv");

  std::vector<Series> regret_series, rmse_series;
  for (const auto& r : records) {
    auto find = [](std::vector<Series>& all, const std::string& name) -> Series& {
      for (auto& s : all)
        if (s.name == name) return s;
      all.push_back(Series{name, {}});
      return all.back();
    };
    if (r.replicates > 0) {
      double per_coord = r.mean_regret / static_cast<double>(r.n);
      if (per_coord > 0) {
        find(regret_series, r.estimator)
            .pts.emplace_back(static_cast<double>(r.n), per_coord);
      }
      if (r.rmse > 0) {
        find(rmse_series, r.estimator).pts.emplace_back(static_cast<double>(r.n), r.rmse);
      }
    }
  }
  write_file(out_dir + "/regret.svg",
             svg_chart(regret_series, "Regret per coordinate vs n", "regret / n"));
  write_file(out_dir + "/rmse.svg", svg_chart(rmse_series, "RMSE vs n", "rmse"));
}

}  // namespace ebpm
