#pragma once

// Sampling (random walks, uniform balls), Monte Carlo experiments, summary
// tables and scaling-law fits.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "words.hpp"

namespace curvelab {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);
// Seed of the stream for one sample; independent of scheduling.
std::uint64_t sample_seed(std::uint64_t master, std::uint64_t n, std::uint64_t index);
// Uniform integer in [0, bound) by rejection; portable across standard libraries.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);
double uniform_unit(Rng& rng);

class WalkDistribution {
 public:
  static WalkDistribution uniform(int rank);
  // "a=0.3,A=0.2,b=0.25,B=0.25"; unlisted letters get probability 0.
  static WalkDistribution parse(std::string_view text, int rank);

  int rank() const noexcept { return rank_; }
  const std::vector<double>& probabilities() const noexcept { return probs_; }  // by letter_index
  bool is_uniform() const;
  Letter draw(Rng& rng) const;
  std::string str() const;

 private:
  WalkDistribution(int rank, std::vector<double> probs);
  int rank_;
  std::vector<double> probs_;
  std::vector<double> cumulative_;
};

// n i.i.d. letters, unreduced.
Word random_walk(const WalkDistribution& mu, int n, Rng& rng);
// Exactly uniform element of B_n, as a reduced word.
Word sample_ball_uniform(int rank, int n, Rng& rng);

struct DriftEstimate {
  double mean = 0;
  double stderr_ = 0;
  double lo = 0;  // 95% normal interval
  double hi = 0;
};
DriftEstimate drift_estimate(const WalkDistribution& mu, int n, int samples, std::uint64_t seed, int jobs = 1);

// Linear-interpolation quantile of sorted data.
double quantile_sorted(const std::vector<double>& sorted, double q);

struct SummaryRow {
  int n = 0;
  std::uint64_t samples = 0;
  double median = 0, q1 = 0, q3 = 0, mean = 0, max = 0;
};
SummaryRow summarize(int n, std::vector<double> values);

struct ExperimentTable {
  std::string experiment;
  std::vector<SummaryRow> rows;
  std::vector<std::vector<double>> raw;  // per row, when retained
  std::map<std::string, std::string> config;
  std::uint64_t seed = 0;
  // Counters and per-n series that do not fit the CSV schema.
  std::map<std::string, double> counters;
  std::map<std::string, std::vector<double>> series;

  std::string csv() const;
  std::string json() const;
  std::string raw_csv() const;
};

struct Fit {
  double slope = 0;
  double stderr_ = 0;
  double intercept = 0;
};
// Least squares of log(median) on log(n).
Fit fit_power_law(const ExperimentTable& table);
// Least squares of median on log(n).
Fit fit_log_law(const ExperimentTable& table);
Fit least_squares(const std::vector<double>& xs, const std::vector<double>& ys);

struct ExperimentConfig {
  std::string experiment;  // self-int | fixed-curve-int | lifting | spiral | minimizer | conj-ball
  std::string sampler = "walk";
  std::string surface = "punctured-torus";
  std::vector<int> n_grid;
  std::uint64_t samples = 100;
  std::uint64_t seed = 1;
  int jobs = 1;
  int d_max = 6;
  std::string degree_search = "classes";  // classes | exhaustive
  std::string alpha = "a";
  std::string mu = "uniform";
  bool retain_raw = false;
  bool exhaustive = true;
  int max_class_length = 6;

  // Applies key=value; throws UsageError for unknown keys or bad values.
  void set(const std::string& key, const std::string& value);
  // Applies every key=value line of a file body in order ('#' starts a comment).
  void apply(std::string_view text);
  static ExperimentConfig parse(std::string_view text);
  std::map<std::string, std::string> echo() const;
  void validate() const;
};

std::vector<int> parse_grid(std::string_view text);

ExperimentTable run_experiment(const ExperimentConfig& config);

// Bootstrap test for an upward trend of a quantile across groups: slope of
// the group quantile against log n, with a one-sided 95% lower bound.
struct TrendTest {
  double slope = 0;
  double lower95 = 0;
  bool upward = false;  // lower95 > 0
};
TrendTest quantile_trend(const std::vector<int>& ns, const std::vector<std::vector<double>>& groups, double q,
                         int resamples, std::uint64_t seed);

std::string version_string();

}  // namespace curvelab
