#include "stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include <boost/multiprecision/random.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <nlohmann/json.hpp>

#include "covers.hpp"
#include "errors.hpp"
#include "fricke.hpp"
#include "intersect.hpp"
#include "parallel.hpp"
#include "ribbon.hpp"

#ifndef CURVELAB_VERSION
#define CURVELAB_VERSION "0.1.0"
#endif

namespace curvelab {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t sample_seed(std::uint64_t master, std::uint64_t n, std::uint64_t index) {
  return splitmix64(splitmix64(splitmix64(master) ^ n) ^ index);
}

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw UsageError("uniform_below: empty range");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  for (;;) {
    const std::uint64_t x = rng();
    if (x < limit) return x % bound;
  }
}

double uniform_unit(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// ---------------------------------------------------------------------------
// Walk distributions

WalkDistribution::WalkDistribution(int rank, std::vector<double> probs) : rank_(rank), probs_(std::move(probs)) {
  if (rank_ < 1) throw UsageError("walk distribution needs rank >= 1");
  double total = 0;
  for (double p : probs_) {
    if (!(p >= 0) || !std::isfinite(p)) throw UsageError("walk probabilities must be finite and non-negative");
    total += p;
  }
  if (std::abs(total - 1) > 1e-9) throw UsageError("walk probabilities must sum to 1");
  for (int g = 0; g < rank_; ++g) {
    if (probs_[2 * g] + probs_[2 * g + 1] <= 0) {
      throw UsageError("walk support must generate: generator " + std::string(1, letter_char(letter_from_index(2 * g))) +
                       " has no weight");
    }
  }
  cumulative_.resize(probs_.size());
  std::partial_sum(probs_.begin(), probs_.end(), cumulative_.begin());
  cumulative_.back() = 1.0;
}

WalkDistribution WalkDistribution::uniform(int rank) {
  if (rank < 1) throw UsageError("walk distribution needs rank >= 1");
  return WalkDistribution(rank, std::vector<double>(static_cast<std::size_t>(2 * rank), 1.0 / (2 * rank)));
}

WalkDistribution WalkDistribution::parse(std::string_view text, int rank) {
  if (text.empty() || text == "uniform") return uniform(rank);
  std::vector<double> probs(static_cast<std::size_t>(2 * rank), 0.0);
  std::vector<bool> seen(probs.size(), false);
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string_view item = text.substr(pos, comma - pos);
    const std::size_t eq = item.find('=');
    if (eq != 1) throw UsageError("bad walk distribution entry '" + std::string(item) + "'");
    const Letter l = parse_letter(item[0]);
    if (generator_of(l) >= rank) throw UsageError("letter outside the alphabet in walk distribution");
    const auto idx = static_cast<std::size_t>(letter_index(l));
    if (seen[idx]) throw UsageError("letter listed twice in walk distribution");
    seen[idx] = true;
    try {
      std::size_t used = 0;
      const std::string num(item.substr(2));
      probs[idx] = std::stod(num, &used);
      if (used != num.size()) throw std::invalid_argument("trailing");
    } catch (const std::logic_error&) {
      throw UsageError("bad probability in '" + std::string(item) + "'");
    }
    pos = comma + 1;
  }
  return WalkDistribution(rank, std::move(probs));
}

bool WalkDistribution::is_uniform() const {
  const double u = 1.0 / static_cast<double>(probs_.size());
  return std::all_of(probs_.begin(), probs_.end(), [&](double p) { return std::abs(p - u) < 1e-12; });
}

Letter WalkDistribution::draw(Rng& rng) const {
  if (is_uniform()) return letter_from_index(static_cast<int>(uniform_below(rng, probs_.size())));
  const double u = uniform_unit(rng);
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  auto idx = static_cast<std::size_t>(it - cumulative_.begin());
  if (idx >= probs_.size()) idx = probs_.size() - 1;
  while (probs_[idx] == 0) --idx;  // u landed on a zero-width cell boundary
  return letter_from_index(static_cast<int>(idx));
}

std::string WalkDistribution::str() const {
  if (is_uniform()) return "uniform";
  std::string out;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    if (probs_[i] == 0) continue;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%c=%.17g", out.empty() ? "" : ",", letter_char(letter_from_index(static_cast<int>(i))),
                  probs_[i]);
    out += buf;
  }
  return out;
}

Word random_walk(const WalkDistribution& mu, int n, Rng& rng) {
  if (n < 0) throw UsageError("walk length must be >= 0");
  std::vector<Letter> letters(static_cast<std::size_t>(n));
  for (auto& l : letters) l = mu.draw(rng);
  return Word(std::move(letters));
}

Word sample_ball_uniform(int rank, int n, Rng& rng) {
  if (rank < 2) throw UsageError("ball sampling needs rank >= 2");
  if (n < 0) throw UsageError("ball radius must be >= 0");
  const BigInt total = ball_size({rank, n});
  boost::random::uniform_int_distribution<BigInt> dist(BigInt(0), total - 1);
  BigInt u = dist(rng);
  int k = 0;
  for (;; ++k) {
    const BigInt s = sphere_size(rank, k);
    if (u < s) break;
    u -= s;
  }
  std::vector<Letter> letters;
  letters.reserve(static_cast<std::size_t>(k));
  const auto q = static_cast<std::uint64_t>(2 * rank);
  for (int i = 0; i < k; ++i) {
    if (i == 0) {
      letters.push_back(letter_from_index(static_cast<int>(uniform_below(rng, q))));
      continue;
    }
    // Uniform over the 2r-1 letters other than the inverse of the previous one.
    const int banned = letter_index(inverse(letters.back()));
    int idx = static_cast<int>(uniform_below(rng, q - 1));
    if (idx >= banned) ++idx;
    letters.push_back(letter_from_index(idx));
  }
  return Word(std::move(letters));
}

DriftEstimate drift_estimate(const WalkDistribution& mu, int n, int samples, std::uint64_t seed, int jobs) {
  if (n < 1) throw UsageError("drift needs n >= 1");
  if (samples < 2) throw UsageError("drift needs at least 2 samples");
  std::vector<double> v(static_cast<std::size_t>(samples));
  parallel_for(v.size(), jobs, [&](std::uint64_t i) {
    Rng rng(sample_seed(seed, static_cast<std::uint64_t>(n), i));
    v[i] = static_cast<double>(reduce(random_walk(mu, n, rng)).size()) / n;
  });
  DriftEstimate d;
  d.mean = std::accumulate(v.begin(), v.end(), 0.0) / samples;
  double ss = 0;
  for (double x : v) ss += (x - d.mean) * (x - d.mean);
  d.stderr_ = std::sqrt(ss / (samples - 1) / samples);
  d.lo = d.mean - 1.96 * d.stderr_;
  d.hi = d.mean + 1.96 * d.stderr_;
  return d;
}

// ---------------------------------------------------------------------------
// Summaries and tables

double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0;
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double t = pos - static_cast<double>(lo);
  return sorted[lo] + t * (sorted[hi] - sorted[lo]);
}

SummaryRow summarize(int n, std::vector<double> values) {
  SummaryRow r;
  r.n = n;
  r.samples = values.size();
  if (values.empty()) return r;
  std::sort(values.begin(), values.end());
  r.median = quantile_sorted(values, 0.5);
  r.q1 = quantile_sorted(values, 0.25);
  r.q3 = quantile_sorted(values, 0.75);
  r.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  r.max = values.back();
  return r;
}

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

}  // namespace

std::string ExperimentTable::csv() const {
  std::string out = "n,samples,median,q1,q3,mean,max\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n) + ',' + std::to_string(r.samples) + ',' + num(r.median) + ',' + num(r.q1) + ',' +
           num(r.q3) + ',' + num(r.mean) + ',' + num(r.max) + '\n';
  }
  return out;
}

std::string ExperimentTable::raw_csv() const {
  std::string out = "n,index,value\n";
  for (std::size_t i = 0; i < raw.size() && i < rows.size(); ++i) {
    for (std::size_t j = 0; j < raw[i].size(); ++j) {
      out += std::to_string(rows[i].n) + ',' + std::to_string(j) + ',' + num(raw[i][j]) + '\n';
    }
  }
  return out;
}

std::string ExperimentTable::json() const {
  nlohmann::ordered_json j;
  j["experiment"] = experiment;
  j["version"] = version_string();
  j["seed"] = seed;
  j["config"] = config;
  j["counters"] = counters;
  nlohmann::ordered_json s = nlohmann::ordered_json::object();
  for (const auto& [k, v] : series) s[k] = v;
  j["series"] = s;
  std::vector<int> ns;
  for (const auto& r : rows) ns.push_back(r.n);
  j["n"] = ns;
  return j.dump(2) + "\n";
}

std::string version_string() { return "curvelab " CURVELAB_VERSION; }

// ---------------------------------------------------------------------------
// Fits

Fit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  if (n < 2 || ys.size() != n) throw DomainError("least squares needs at least 2 points");
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(n);
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(n);
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx <= 0) throw DomainError("least squares: abscissae are all equal");
  Fit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  if (n > 2) {
    double rss = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double e = ys[i] - f.intercept - f.slope * xs[i];
      rss += e * e;
    }
    f.stderr_ = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
  }
  return f;
}

namespace {

void check_fit_rows(const ExperimentTable& t) {
  if (t.rows.size() < 4) throw DomainError("fit needs at least 4 rows");
  for (const auto& r : t.rows) {
    if (r.n <= 1) throw DomainError("fit needs n > 1 on every row");
    if (!(r.median > 0)) throw DomainError("fit needs positive medians");
  }
}

}  // namespace

Fit fit_power_law(const ExperimentTable& table) {
  check_fit_rows(table);
  std::vector<double> xs, ys;
  for (const auto& r : table.rows) {
    xs.push_back(std::log(static_cast<double>(r.n)));
    ys.push_back(std::log(r.median));
  }
  return least_squares(xs, ys);
}

Fit fit_log_law(const ExperimentTable& table) {
  check_fit_rows(table);
  std::vector<double> xs, ys;
  for (const auto& r : table.rows) {
    xs.push_back(std::log(static_cast<double>(r.n)));
    ys.push_back(r.median);
  }
  return least_squares(xs, ys);
}

TrendTest quantile_trend(const std::vector<int>& ns, const std::vector<std::vector<double>>& groups, double q,
                         int resamples, std::uint64_t seed) {
  if (ns.size() != groups.size() || ns.size() < 2) throw DomainError("trend test needs at least 2 groups");
  for (const auto& g : groups) {
    if (g.empty()) throw DomainError("trend test: empty group");
  }
  std::vector<double> xs;
  for (int n : ns) xs.push_back(std::log(static_cast<double>(n)));
  auto slope_of = [&](const std::vector<std::vector<double>>& gs) {
    std::vector<double> ys;
    for (auto g : gs) {
      std::sort(g.begin(), g.end());
      ys.push_back(quantile_sorted(g, q));
    }
    return least_squares(xs, ys).slope;
  };
  TrendTest t;
  t.slope = slope_of(groups);
  std::vector<double> slopes;
  Rng rng(splitmix64(seed));
  std::vector<std::vector<double>> boot(groups.size());
  for (int b = 0; b < resamples; ++b) {
    for (std::size_t k = 0; k < groups.size(); ++k) {
      boot[k].resize(groups[k].size());
      for (auto& v : boot[k]) v = groups[k][uniform_below(rng, groups[k].size())];
    }
    slopes.push_back(slope_of(boot));
  }
  std::sort(slopes.begin(), slopes.end());
  t.lower95 = slopes.empty() ? t.slope : quantile_sorted(slopes, 0.05);
  t.upward = t.lower95 > 0;
  return t;
}

// ---------------------------------------------------------------------------
// Configuration

std::vector<int> parse_grid(std::string_view text) {
  auto to_int = [](std::string_view s) {
    try {
      std::size_t used = 0;
      const std::string str(s);
      const int v = std::stoi(str, &used);
      if (used != str.size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::logic_error&) {
      throw UsageError("bad integer '" + std::string(s) + "' in n grid");
    }
  };
  std::vector<int> out;
  if (text.find(':') != std::string_view::npos) {
    // lo:hi:step
    std::vector<int> parts;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t c = std::min(text.find(':', pos), text.size());
      parts.push_back(to_int(text.substr(pos, c - pos)));
      pos = c + 1;
    }
    if (parts.size() != 3 || parts[2] <= 0 || parts[0] > parts[1]) throw UsageError("n grid range must be lo:hi:step");
    for (int v = parts[0]; v <= parts[1]; v += parts[2]) out.push_back(v);
  } else {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const std::size_t c = std::min(text.find(',', pos), text.size());
      out.push_back(to_int(text.substr(pos, c - pos)));
      pos = c + 1;
    }
  }
  for (int v : out) {
    if (v < 0) throw UsageError("n grid values must be >= 0");
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw UsageError("bad boolean '" + v + "'");
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    if (!v.empty() && v[0] == '-') throw std::invalid_argument("negative");
    const auto x = std::stoull(v, &used);
    if (used != v.size()) throw std::invalid_argument("trailing");
    return x;
  } catch (const std::logic_error&) {
    throw UsageError("bad value '" + v + "' for " + key);
  }
}

int parse_int(const std::string& key, const std::string& v, int lo, int hi) {
  const auto x = parse_u64(key, v);
  if (x < static_cast<std::uint64_t>(lo) || x > static_cast<std::uint64_t>(hi)) {
    throw UsageError(key + " must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  return static_cast<int>(x);
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

const char* const kExperiments[] = {"self-int", "fixed-curve-int", "lifting", "spiral", "minimizer", "conj-ball"};

}  // namespace

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  if (key == "experiment") {
    experiment = value;
  } else if (key == "sampler") {
    if (value != "walk" && value != "ball") throw UsageError("sampler must be walk or ball");
    sampler = value;
  } else if (key == "surface") {
    surface = value;
  } else if (key == "n") {
    n_grid = parse_grid(value);
  } else if (key == "samples") {
    samples = parse_u64(key, value);
  } else if (key == "seed") {
    seed = parse_u64(key, value);
  } else if (key == "jobs") {
    jobs = parse_int(key, value, 1, 1024);
  } else if (key == "d_max") {
    d_max = parse_int(key, value, 1, 8);
  } else if (key == "degree_search") {
    if (value != "classes" && value != "exhaustive") throw UsageError("degree_search must be classes or exhaustive");
    degree_search = value;
  } else if (key == "alpha") {
    alpha = value;
  } else if (key == "mu") {
    mu = value;
  } else if (key == "retain_raw") {
    retain_raw = parse_bool(value);
  } else if (key == "exhaustive") {
    exhaustive = parse_bool(value);
  } else if (key == "max_class_length") {
    max_class_length = parse_int(key, value, 1, 12);
  } else {
    throw UsageError("unknown config key '" + key + "'");
  }
}

ExperimentConfig ExperimentConfig::parse(std::string_view text) {
  ExperimentConfig c;
  c.apply(text);
  return c;
}

void ExperimentConfig::apply(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
    set(trim(std::string_view(t).substr(0, eq)), trim(std::string_view(t).substr(eq + 1)));
  }
}

std::map<std::string, std::string> ExperimentConfig::echo() const {
  std::string grid;
  for (int n : n_grid) grid += (grid.empty() ? "" : ",") + std::to_string(n);
  return {{"experiment", experiment},
          {"sampler", sampler},
          {"surface", surface},
          {"n", grid},
          {"samples", std::to_string(samples)},
          {"seed", std::to_string(seed)},
          {"d_max", std::to_string(d_max)},
          {"degree_search", degree_search},
          {"alpha", alpha},
          {"mu", mu},
          {"retain_raw", retain_raw ? "true" : "false"},
          {"exhaustive", exhaustive ? "true" : "false"},
          {"max_class_length", std::to_string(max_class_length)}};
}

void ExperimentConfig::validate() const {
  if (std::find(std::begin(kExperiments), std::end(kExperiments), experiment) == std::end(kExperiments)) {
    throw UsageError("unknown experiment '" + experiment + "'");
  }
  if (n_grid.empty()) throw UsageError("config must set an n grid");
  if (samples == 0 && !(experiment == "conj-ball" && exhaustive)) throw UsageError("samples must be positive");
}

// ---------------------------------------------------------------------------
// Experiments

namespace {

struct Context {
  const ExperimentConfig& cfg;
  RibbonGraph rose;
  int rank;
  WalkDistribution mu;

  explicit Context(const ExperimentConfig& c)
      : cfg(c), rose(RibbonGraph::preset(c.surface)), rank(0), mu(WalkDistribution::uniform(2)) {
    if (!rose.is_rose()) throw UsageError("experiments need a one-vertex spine");
    rank = rose.rank();
    mu = WalkDistribution::parse(c.mu, rank);
  }

  Word draw(int n, std::uint64_t index) const {
    Rng rng(sample_seed(cfg.seed, static_cast<std::uint64_t>(n), index));
    return cfg.sampler == "ball" ? sample_ball_uniform(rank, n, rng) : random_walk(mu, n, rng);
  }
};

// One measured sample.  `has_value` is false when the sample contributes
// nothing to the summary (trivial word, not found, excluded).
struct Outcome {
  bool has_value = false;
  double value = 0;
  std::map<std::string, double> tally;  // summed per n and overall
};

using Measure = std::function<Outcome(int n, const Word& w)>;

// Largest spiraling over the generator cores; powers of a core are skipped.
std::int64_t max_generator_spiraling(const CyclicWord& gamma, const RibbonGraph& rose) {
  const CyclicWord root = primitive_root(gamma).root;
  std::int64_t best = 0;
  for (int g = 0; g < rose.rank(); ++g) {
    const CyclicWord alpha = cyclic_reduce(Word({static_cast<Letter>(g + 1)}));
    if (root == alpha || root == alpha.inverse()) continue;
    best = std::max(best, spiraling(gamma, alpha, rose));
  }
  return best;
}

void self_int_checks(Outcome& o, const CyclicWord& gamma, std::int64_t i) {
  const auto len = static_cast<std::int64_t>(gamma.size());
  o.tally["intersection_checked"] += 1;
  o.tally["intersection_bound_violations"] += i > len * (len - 1) / 2 ? 1 : 0;
}

class DegreeMemo {
 public:
  DegreeSearchResult get(const CyclicWord& gamma, const RibbonGraph& rose, const DegreeSearchOptions& opt) {
    const std::string key = unoriented(gamma).str();
    {
      std::lock_guard lock(m_);
      if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    DegreeSearchResult r = simple_lifting_degree(gamma, rose, opt);
    r.witness.reset();
    std::lock_guard lock(m_);
    return cache_.emplace(key, std::move(r)).first->second;
  }

 private:
  std::mutex m_;
  std::map<std::string, DegreeSearchResult> cache_;
};

Measure make_measure(const Context& ctx, DegreeMemo& memo) {
  const auto& cfg = ctx.cfg;
  const RibbonGraph& rose = ctx.rose;
  if (cfg.experiment == "self-int") {
    return [&rose](int, const Word& w) {
      Outcome o;
      const CyclicWord gamma = cyclic_reduce(w);
      const std::int64_t i = gamma.empty() ? 0 : self_intersection(rose, gamma);
      self_int_checks(o, gamma, i);
      o.has_value = true;
      o.value = static_cast<double>(i);
      return o;
    };
  }
  if (cfg.experiment == "fixed-curve-int") {
    const CyclicWord alpha = cyclic_reduce(Word::parse(cfg.alpha));
    if (alpha.empty()) throw UsageError("alpha must be nontrivial");
    return [&rose, alpha](int n, const Word& w) {
      Outcome o;
      const CyclicWord gamma = cyclic_reduce(w);
      std::int64_t i = 0;
      if (!gamma.empty() && gamma != alpha && gamma != alpha.inverse()) i = intersection(rose, gamma, alpha);
      o.has_value = true;
      o.value = static_cast<double>(i);
      if (n > 0) o.tally["ratio_sum"] += static_cast<double>(i) / n;
      return o;
    };
  }
  if (cfg.experiment == "lifting") {
    if (!ctx.mu.is_uniform()) throw UsageError("lifting experiments require the uniform walk distribution");
    DegreeSearchOptions opt;
    opt.d_max = cfg.d_max;
    opt.class_representatives = cfg.degree_search == "classes";
    return [&rose, &memo, opt](int, const Word& w) {
      Outcome o;
      const CyclicWord gamma = cyclic_reduce(w);
      if (gamma.empty()) {
        o.tally["trivial"] += 1;
        return o;
      }
      const std::int64_t i = self_intersection(rose, gamma);
      self_int_checks(o, gamma, i);
      const DegreeSearchResult r = memo.get(gamma, rose, opt);
      const std::int64_t spiral = max_generator_spiraling(gamma, rose);
      o.tally["nontrivial"] += 1;
      if (!r.found) {
        o.tally["not_found"] += 1;
        o.tally["degree_at_least_2"] += 1;  // deg > d_max >= 1
        return o;
      }
      o.tally["found"] += 1;
      if (r.degree >= 2) o.tally["degree_at_least_2"] += 1;
      o.tally["degree_bound_violations"] += r.degree > 5 * i + 5 ? 1 : 0;
      o.tally["spiraling_violations"] += r.degree < spiral ? 1 : 0;
      o.tally["degree_over_17_length"] += r.degree > 17 * static_cast<std::int64_t>(gamma.size()) ? 1 : 0;
      o.tally["degree_checked"] += 1;
      o.has_value = true;
      o.value = r.degree;
      return o;
    };
  }
  if (cfg.experiment == "spiral") {
    return [&rose](int, const Word& w) {
      Outcome o;
      const CyclicWord gamma = cyclic_reduce(w);
      if (gamma.empty()) {
        o.tally["trivial"] += 1;
        return o;
      }
      o.has_value = true;
      o.value = static_cast<double>(max_generator_spiraling(gamma, rose));
      return o;
    };
  }
  if (cfg.experiment == "minimizer") {
    if (ctx.rank != 2) throw UsageError("minimizer experiments need a rank-2 surface");
    const FrickePoint target = rose_minimizer();
    return [target](int, const Word& w) {
      Outcome o;
      const CyclicWord gamma = cyclic_reduce(w);
      if (gamma.empty()) {
        o.tally["trivial"] += 1;
        return o;
      }
      MinimizeResult r;
      try {
        r = minimize_length(gamma);
      } catch (const DomainError&) {
        o.tally["peripheral"] += 1;
        return o;
      }
      if (r.status == MinimizeStatus::diverged) {
        o.tally["diverged"] += 1;
        return o;
      }
      if (r.status == MinimizeStatus::budget) {
        o.tally["budget"] += 1;
        return o;
      }
      o.tally["converged"] += 1;
      o.tally["gradient_violations"] += r.gradient_norm < 1e-6 ? 0 : 1;
      o.tally["max_gradient"] = r.gradient_norm;  // combined by max below
      o.has_value = true;
      o.value = distance_proxy(r.point, target);
      return o;
    };
  }
  throw UsageError("unknown experiment '" + cfg.experiment + "'");
}

void merge(std::map<std::string, double>& into, const std::map<std::string, double>& from) {
  for (const auto& [k, v] : from) {
    if (k.rfind("max_", 0) == 0) {
      into[k] = std::max(into[k], v);
    } else {
      into[k] += v;
    }
  }
}

ExperimentTable run_conj_ball(const Context& ctx) {
  const auto& cfg = ctx.cfg;
  const Alphabet alphabet(ctx.rank);
  std::vector<CyclicWord> classes;
  if (cfg.exhaustive) {
    for (int len = 1; len <= cfg.max_class_length; ++len) {
      for (auto& c : cyclic_words_of_length(ctx.rank, len)) classes.push_back(std::move(c));
    }
  } else {
    for (std::uint64_t i = 0; i < cfg.samples; ++i) {
      const CyclicWord c = cyclic_reduce(ctx.draw(cfg.max_class_length, i));
      if (!c.empty()) classes.push_back(c);
    }
  }
  ExperimentTable t;
  t.experiment = cfg.experiment;
  t.seed = cfg.seed;
  t.config = cfg.echo();
  double violations = 0, checked = 0;
  for (int n : cfg.n_grid) {
    std::vector<double> ratio(classes.size(), -1);
    std::vector<char> bad(classes.size(), 0);
    parallel_for(classes.size(), cfg.jobs, [&](std::uint64_t k) {
      const CyclicWord& c = classes[k];
      const std::uint64_t count = conjugates_in_ball(c, n, alphabet);
      const int len = static_cast<int>(c.size());
      const BigInt bound = n >= len ? BigInt(n) * ball_size({ctx.rank, (n - len) / 2}) : BigInt(0);
      if (BigInt(count) > bound) bad[k] = 1;
      if (bound > 0) ratio[k] = static_cast<double>(count) / bound.convert_to<double>();
    });
    std::vector<double> values;
    double v_n = 0;
    for (std::size_t k = 0; k < classes.size(); ++k) {
      if (ratio[k] >= 0) values.push_back(ratio[k]);
      v_n += bad[k];
    }
    violations += v_n;
    checked += static_cast<double>(classes.size());
    t.series["violations"].push_back(v_n);
    t.series["classes"].push_back(static_cast<double>(classes.size()));
    if (cfg.retain_raw) t.raw.push_back(values);
    t.rows.push_back(summarize(n, std::move(values)));
  }
  t.counters["violations"] = violations;
  t.counters["checked"] = checked;
  return t;
}

}  // namespace

ExperimentTable run_experiment(const ExperimentConfig& config) {
  config.validate();
  const Context ctx(config);
  if (config.experiment == "conj-ball") return run_conj_ball(ctx);

  DegreeMemo memo;
  const Measure measure = make_measure(ctx, memo);
  ExperimentTable t;
  t.experiment = config.experiment;
  t.seed = config.seed;
  t.config = config.echo();
  std::map<std::string, std::vector<double>> series;
  for (std::size_t row = 0; row < config.n_grid.size(); ++row) {
    const int n = config.n_grid[row];
    std::vector<Outcome> out(config.samples);
    parallel_for(config.samples, config.jobs, [&](std::uint64_t i) { out[i] = measure(n, ctx.draw(n, i)); });
    std::vector<double> values;
    std::map<std::string, double> tally;
    for (const auto& o : out) {
      if (o.has_value) values.push_back(o.value);
      merge(tally, o.tally);
    }
    merge(t.counters, tally);
    for (const auto& [k, v] : tally) {
      auto& s = series[k];
      s.resize(row, 0.0);
      s.push_back(v);
    }
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    series["p90"].resize(row, 0.0);
    series["p90"].push_back(quantile_sorted(sorted, 0.9));
    if (config.retain_raw) t.raw.push_back(values);
    t.rows.push_back(summarize(n, std::move(values)));
  }
  for (auto& [k, s] : series) s.resize(config.n_grid.size(), 0.0);
  t.series = std::move(series);
  return t;
}

}  // namespace curvelab
