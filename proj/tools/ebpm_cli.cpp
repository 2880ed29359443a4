// Command-line harness: simulate / estimate / bench / approx. Talks to the
// library exclusively through the C interface in ebpm.h.

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ebpm.h"

namespace {

int die(ebpm_status status) {
  std::cerr << "error: " << ebpm_status_name(status) << ": " << ebpm_last_error() << "\n";
  return static_cast<int>(status);
}

std::string fmt(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CLI::ValidationError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct PriorHandle {
  ebpm_prior* p = nullptr;
  ~PriorHandle() { ebpm_prior_free(p); }
};

int cmd_simulate(const std::string& prior_json, std::int64_t n, std::uint64_t seed,
                 const std::string& out_path) {
  PriorHandle prior;
  if (auto st = ebpm_prior_parse(prior_json.c_str(), &prior.p); st != EBPM_OK) return die(st);
  std::vector<double> thetas(static_cast<std::size_t>(n));
  std::vector<std::int64_t> xs(static_cast<std::size_t>(n));
  if (auto st = ebpm_sample_channel(prior.p, n, seed, thetas.data(), xs.data()); st != EBPM_OK) {
    return die(st);
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open " << out_path << "\n";
    return 1;
  }
  out << "theta,x\n";
  for (std::size_t i = 0; i < xs.size(); ++i) out << fmt(thetas[i]) << ',' << xs[i] << '\n';
  return 0;
}

// Accepts the simulate output (theta,x) or a bare single-column x file.
std::vector<std::int64_t> read_draws(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CLI::ValidationError("cannot read " + path);
  std::string line;
  if (!std::getline(in, line)) throw CLI::ValidationError("empty data file " + path);
  int x_col = 0;
  {
    std::vector<std::string> header;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) header.push_back(field);
    bool found = false;
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == "x") {
        x_col = static_cast<int>(i);
        found = true;
      }
    }
    if (!found) throw CLI::ValidationError("no 'x' column in " + path);
  }
  std::vector<std::int64_t> xs;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    for (int c = 0; std::getline(ss, field, ','); ++c) {
      if (c == x_col) xs.push_back(std::stoll(field));
    }
  }
  if (xs.empty()) throw CLI::ValidationError("no rows in " + path);
  return xs;
}

int cmd_estimate(const std::string& data_path, const std::string& estimator, int k, bool has_clip,
                 double clip_lo, double clip_hi, const std::string& out_path) {
  std::vector<std::int64_t> xs = read_draws(data_path);
  ebpm_counts* counts = nullptr;
  if (auto st = ebpm_counts_create(xs.data(), static_cast<std::int64_t>(xs.size()), &counts);
      st != EBPM_OK) {
    return die(st);
  }
  std::unique_ptr<ebpm_counts, decltype(&ebpm_counts_free)> counts_guard(counts,
                                                                         &ebpm_counts_free);
  ebpm_fit* fit = nullptr;
  if (auto st = ebpm_fit_create(counts, estimator.c_str(), k, has_clip ? 1 : 0, clip_lo, clip_hi,
                                &fit);
      st != EBPM_OK) {
    return die(st);
  }
  std::unique_ptr<ebpm_fit, decltype(&ebpm_fit_free)> fit_guard(fit, &ebpm_fit_free);

  std::map<std::int64_t, int> distinct;
  for (auto x : xs) distinct[x] = 1;
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open " << out_path << "\n";
    return 1;
  }
  out << "x,estimate\n";
  for (const auto& [x, unused] : distinct) {
    double v = 0;
    if (auto st = ebpm_fit_eval(fit, x, &v); st != EBPM_OK) return die(st);
    out << x << ',' << fmt(v) << '\n';
  }
  return 0;
}

int cmd_bench(const std::string& config_path, const std::string& out_dir) {
  std::string config = read_file(config_path);
  if (auto st = ebpm_bench_run(config.c_str(), out_dir.c_str()); st != EBPM_OK) return die(st);
  std::cout << "wrote " << out_dir << "/records.csv\n";
  return 0;
}

int cmd_approx(const std::string& name, double h, int degree, const std::string& out_path) {
  std::vector<double> coefs(static_cast<std::size_t>(degree) + 1);
  double sup_residual = 0;
  if (auto st = ebpm_poly_approx_named(name.c_str(), h, degree, coefs.data(), &sup_residual);
      st != EBPM_OK) {
    return die(st);
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open " << out_path << "\n";
    return 1;
  }
  out << "m,coefficient\n";
  for (std::size_t m = 0; m < coefs.size(); ++m) out << m << ',' << fmt(coefs[m]) << '\n';
  std::cout << "sup_residual=" << fmt(sup_residual) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Empirical-Bayes estimation of posterior moments in the Poisson mixture model"};
  app.set_help_flag("--help", "print help");  // frees -h / --h for the approx domain option
  app.require_subcommand(1);

  std::string prior_json, out_path, data_path, estimator, config_path, out_dir, functional;
  std::int64_t n = 0;
  std::uint64_t seed = 1;
  int k = 1, degree = 1;
  double h = 1;
  std::string clip_arg;

  auto* simulate = app.add_subcommand("simulate", "Draw (theta_i, X_i) from a prior");
  simulate->add_option("--prior", prior_json, "prior JSON")->required();
  simulate->add_option("--n", n, "sample size")->required();
  simulate->add_option("--seed", seed, "RNG seed");
  simulate->add_option("--out", out_path, "output CSV (theta,x)")->required();

  auto* estimate = app.add_subcommand("estimate", "Fit an estimator to drawn data");
  estimate->add_option("--prior-data", data_path, "CSV with an x column")->required();
  estimate->add_option("--estimator", estimator, "mom|robbins|erm|erm-clipped|npmle-plugin|naive-plugin")
      ->required();
  estimate->add_option("--k", k, "moment order")->required();
  estimate->add_option("--clip", clip_arg, "clip bounds a,b");
  estimate->add_option("--out", out_path, "output CSV (x,estimate)")->required();

  auto* bench = app.add_subcommand("bench", "Monte-Carlo regret benchmark");
  bench->add_option("--config", config_path, "experiment config JSON file")->required();
  bench->add_option("--out-dir", out_dir, "output directory")->required();

  auto* approx = app.add_subcommand("approx", "Polynomial approximation of a named functional");
  approx->add_option("--functional", functional, "cube|exp|sqrt1p|lipschitz-abs")->required();
  approx->add_option("--h", h, "domain endpoint")->required();
  approx->add_option("--degree", degree, "polynomial degree")->required();
  approx->add_option("--out", out_path, "output CSV (m,coefficient)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return cmd_simulate(prior_json, n, seed, out_path);
    if (estimate->parsed()) {
      bool has_clip = !clip_arg.empty();
      double lo = 0, hi = 0;
      if (has_clip) {
        auto comma = clip_arg.find(',');
        if (comma == std::string::npos) {
          std::cerr << "error: --clip expects a,b\n";
          return 1;
        }
        lo = std::stod(clip_arg.substr(0, comma));
        hi = std::stod(clip_arg.substr(comma + 1));
      }
      return cmd_estimate(data_path, estimator, k, has_clip, lo, hi, out_path);
    }
    if (bench->parsed()) return cmd_bench(config_path, out_dir);
    if (approx->parsed()) return cmd_approx(functional, h, degree, out_path);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
