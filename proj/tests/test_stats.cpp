#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "errors.hpp"
#include "stats.hpp"

using namespace curvelab;

namespace {

double chi_square(const std::vector<double>& observed, const std::vector<double>& expected) {
  double s = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) s += (observed[i] - expected[i]) * (observed[i] - expected[i]) / expected[i];
  return s;
}

ExperimentConfig small_config(const std::string& experiment) {
  ExperimentConfig c;
  c.experiment = experiment;
  c.n_grid = {8, 12, 16, 20};
  c.samples = 40;
  c.seed = 7;
  return c;
}

}  // namespace

TEST_CASE("seeds and uniform draws are deterministic") {
  CHECK(splitmix64(0) == splitmix64(0));
  CHECK(sample_seed(1, 10, 0) != sample_seed(1, 10, 1));
  CHECK(sample_seed(1, 10, 0) != sample_seed(1, 11, 0));
  Rng a(5), b(5);
  const auto mu = WalkDistribution::uniform(2);
  CHECK(random_walk(mu, 50, a) == random_walk(mu, 50, b));
  Rng c(1);
  CHECK(random_walk(mu, 0, c).empty());
  for (int i = 0; i < 1000; ++i) CHECK(uniform_below(c, 7) < 7);
}

TEST_CASE("walk letter frequencies pass a chi-square test") {
  const auto mu = WalkDistribution::uniform(2);
  Rng rng(12345);
  std::vector<double> counts(4, 0);
  const int draws = 1'000'000;
  for (int i = 0; i < draws; ++i) counts[static_cast<std::size_t>(letter_index(mu.draw(rng)))] += 1;
  CHECK(chi_square(counts, std::vector<double>(4, draws / 4.0)) < 11.345);  // df 3, 99%

  const auto skew = WalkDistribution::parse("a=0.4,A=0.1,b=0.3,B=0.2", 2);
  CHECK_FALSE(skew.is_uniform());
  std::vector<double> sc(4, 0);
  for (int i = 0; i < 200'000; ++i) sc[static_cast<std::size_t>(letter_index(skew.draw(rng)))] += 1;
  CHECK(chi_square(sc, {80'000, 20'000, 60'000, 40'000}) < 11.345);
}

TEST_CASE("walk distribution validation") {
  CHECK(WalkDistribution::parse("uniform", 3).is_uniform());
  CHECK(WalkDistribution::parse("a=0.25,A=0.25,b=0.25,B=0.25", 2).is_uniform());
  CHECK_THROWS_AS(WalkDistribution::parse("a=0.5,A=0.5", 2), UsageError);  // b has no weight
  CHECK_THROWS_AS(WalkDistribution::parse("a=0.5,b=0.6", 2), UsageError);
  CHECK_THROWS_AS(WalkDistribution::parse("a=x,b=1", 2), UsageError);
  CHECK_THROWS_AS(WalkDistribution::parse("c=0.5,a=0.5", 2), UsageError);
  // Support {a, b} still generates.
  Rng rng(3);
  const auto pos = WalkDistribution::parse("a=0.5,b=0.5", 2);
  for (Letter l : random_walk(pos, 100, rng)) CHECK(l > 0);
}

TEST_CASE("ball sampler is uniform") {
  Rng rng(99);
  SUBCASE("B_1 in rank 2") {
    std::vector<double> counts(5, 0);
    const int draws = 100'000;
    for (int i = 0; i < draws; ++i) {
      const Word w = sample_ball_uniform(2, 1, rng);
      counts[w.empty() ? 4 : static_cast<std::size_t>(letter_index(w[0]))] += 1;
    }
    CHECK(chi_square(counts, std::vector<double>(5, draws / 5.0)) < 13.277);  // df 4
  }
  SUBCASE("length distribution on B_6") {
    const int n = 6, draws = 100'000;
    const double total = ball_size({2, n}).convert_to<double>();
    std::vector<double> counts(n + 1, 0), expected;
    for (int k = 0; k <= n; ++k) expected.push_back(draws * sphere_size(2, k).convert_to<double>() / total);
    for (int i = 0; i < draws; ++i) {
      const Word w = sample_ball_uniform(2, n, rng);
      CHECK(w.is_reduced());
      counts[w.size()] += 1;
    }
    CHECK(chi_square(counts, expected) < 16.812);  // df 6
  }
  SUBCASE("all of B_2 in rank 2 is hit evenly") {
    std::map<std::string, double> counts;
    const int draws = 170'000;
    for (int i = 0; i < draws; ++i) counts[sample_ball_uniform(2, 2, rng).str()] += 1;
    REQUIRE(counts.size() == 17);
    std::vector<double> obs;
    for (auto& [k, v] : counts) obs.push_back(v);
    CHECK(chi_square(obs, std::vector<double>(17, draws / 17.0)) < 32.0);  // df 16, 99%
  }
  SUBCASE("most of a large ball is long") {
    auto long_fraction = [&](int n) {
      int hits = 0;
      for (int i = 0; i < 2000; ++i) hits += 2 * static_cast<int>(sample_ball_uniform(2, n, rng).size()) >= n;
      return hits / 2000.0;
    };
    const double f40 = long_fraction(40);
    CHECK(f40 > 0.99);
    CHECK(long_fraction(400) >= f40 - 0.005);
  }
  CHECK_THROWS_AS(sample_ball_uniform(1, 3, rng), UsageError);
}

TEST_CASE("drift") {
  CHECK(drift_estimate(WalkDistribution::uniform(2), 1, 50, 1).mean == 1.0);
  const auto d2 = drift_estimate(WalkDistribution::uniform(2), 2000, 400, 1);
  CHECK(std::abs(d2.mean - 0.5) < 0.02);
  CHECK(d2.lo < d2.mean);
  CHECK(d2.hi > d2.mean);
  const auto d3 = drift_estimate(WalkDistribution::uniform(3), 2000, 400, 1);
  CHECK(std::abs(d3.mean - 2.0 / 3.0) < 0.02);
  const auto j3 = drift_estimate(WalkDistribution::uniform(3), 2000, 400, 1, 3);
  CHECK(j3.mean == d3.mean);
}

TEST_CASE("summaries and quantiles") {
  CHECK(quantile_sorted({1, 2, 3, 4}, 0.5) == doctest::Approx(2.5));
  CHECK(quantile_sorted({1, 2, 3, 4, 5}, 0.25) == doctest::Approx(2));
  const SummaryRow r = summarize(3, {5, 1, 3});
  CHECK(r.samples == 3);
  CHECK(r.median == 3);
  CHECK(r.mean == doctest::Approx(3));
  CHECK(r.max == 5);
  CHECK(summarize(1, {}).samples == 0);
}

TEST_CASE("scaling fits") {
  ExperimentTable sq, lin, lg;
  for (int n : {10, 20, 40, 80, 160}) {
    sq.rows.push_back({n, 1, double(n) * n, 0, 0, 0, 0});
    lin.rows.push_back({n, 1, 3.0 * n, 0, 0, 0, 0});
    lg.rows.push_back({n, 1, 2 + 1.5 * std::log(double(n)), 0, 0, 0, 0});
  }
  CHECK(fit_power_law(sq).slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fit_power_law(sq).stderr_ < 1e-9);
  CHECK(fit_power_law(lin).slope == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit_power_law(lin).intercept == doctest::Approx(std::log(3.0)));
  CHECK(fit_log_law(lg).slope == doctest::Approx(1.5));
  ExperimentTable few;
  few.rows = {sq.rows[0], sq.rows[1], sq.rows[2]};
  CHECK_THROWS_AS(fit_power_law(few), DomainError);
  sq.rows[2].median = 0;
  CHECK_THROWS_AS(fit_power_law(sq), DomainError);
}

TEST_CASE("quantile trend test") {
  std::vector<std::vector<double>> flat, rising;
  Rng rng(4);
  for (int k = 0; k < 3; ++k) {
    std::vector<double> f, r;
    for (int i = 0; i < 100; ++i) {
      f.push_back(uniform_unit(rng));
      r.push_back(uniform_unit(rng) + 2.0 * k);
    }
    flat.push_back(f);
    rising.push_back(r);
  }
  CHECK_FALSE(quantile_trend({20, 40, 80}, flat, 0.9, 500, 1).upward);
  CHECK(quantile_trend({20, 40, 80}, rising, 0.9, 500, 1).upward);
}

TEST_CASE("config parsing") {
  const auto c = ExperimentConfig::parse(
      "# comment\nexperiment = self-int\nn = 10,20, 40\nsamples=12  # trailing\nsampler = ball\nretain_raw = true\n");
  CHECK(c.experiment == "self-int");
  CHECK(c.n_grid == std::vector<int>{10, 20, 40});
  CHECK(c.samples == 12);
  CHECK(c.sampler == "ball");
  CHECK(c.retain_raw);
  CHECK_THROWS_AS(ExperimentConfig::parse("colour = red\n"), UsageError);
  CHECK_THROWS_AS(ExperimentConfig::parse("samples\n"), UsageError);
  CHECK_THROWS_AS(ExperimentConfig::parse("samples = -3\n"), UsageError);
  CHECK_THROWS_AS(ExperimentConfig::parse("sampler = lattice\n"), UsageError);
  CHECK(parse_grid("6:22:4") == std::vector<int>{6, 10, 14, 18, 22});
  CHECK_THROWS_AS(parse_grid("1:2"), UsageError);
  ExperimentConfig none;
  none.experiment = "teleport";
  none.n_grid = {1};
  CHECK_THROWS_AS(run_experiment(none), UsageError);
}

TEST_CASE("experiments are reproducible across worker counts") {
  for (const char* name : {"self-int", "fixed-curve-int", "spiral", "lifting"}) {
    CAPTURE(name);
    ExperimentConfig c = small_config(name);
    if (std::string(name) == "lifting") c.n_grid = {4, 6, 8, 10};
    const auto one = run_experiment(c);
    c.jobs = 3;
    const auto three = run_experiment(c);
    CHECK(one.csv() == three.csv());
    CHECK(one.json() == three.json());
  }
}

TEST_CASE("experiment invariants and raw retention") {
  ExperimentConfig c = small_config("self-int");
  c.retain_raw = true;
  c.sampler = "ball";
  const auto t = run_experiment(c);
  REQUIRE(t.rows.size() == 4);
  REQUIRE(t.raw.size() == 4);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const SummaryRow again = summarize(t.rows[i].n, t.raw[i]);
    CHECK(again.median == t.rows[i].median);
    CHECK(again.mean == t.rows[i].mean);
    CHECK(again.max == t.rows[i].max);
  }
  CHECK(t.counters.at("intersection_bound_violations") == 0);
  CHECK(t.counters.at("intersection_checked") == 160);
  CHECK(t.csv().rfind("n,samples,median,q1,q3,mean,max\n", 0) == 0);
  CHECK(t.raw_csv().rfind("n,index,value\n", 0) == 0);

  ExperimentConfig lift = small_config("lifting");
  lift.n_grid = {4, 6, 8, 10};
  const auto lt = run_experiment(lift);
  CHECK(lt.counters.at("degree_bound_violations") == 0);
  CHECK(lt.counters.at("spiraling_violations") == 0);
  CHECK(lt.counters.at("degree_checked") > 0);

  lift.mu = "a=0.4,A=0.1,b=0.25,B=0.25";
  CHECK_THROWS_AS(run_experiment(lift), UsageError);
}

TEST_CASE("conjugacy bound experiment, small exhaustive") {
  ExperimentConfig c;
  c.experiment = "conj-ball";
  c.n_grid = {1, 2, 3, 4, 5, 6, 7, 8};
  c.max_class_length = 4;
  c.samples = 0;
  const auto t = run_experiment(c);
  CHECK(t.counters.at("violations") == 0);
  CHECK(t.counters.at("checked") > 0);
  for (const auto& r : t.rows) CHECK(r.max <= 1.0);
}

TEST_CASE("minimizer experiment counts exclusions") {
  ExperimentConfig c = small_config("minimizer");
  c.n_grid = {10, 20};
  c.samples = 10;
  const auto t = run_experiment(c);
  double accounted = 0;
  for (const char* k : {"converged", "diverged", "peripheral", "budget", "trivial"}) {
    if (t.counters.count(k)) accounted += t.counters.at(k);
  }
  CHECK(accounted == 20);
  if (t.counters.count("converged")) CHECK(t.counters.at("gradient_violations") == 0);
  if (t.counters.count("max_gradient")) CHECK(t.counters.at("max_gradient") < 1e-6);
}
