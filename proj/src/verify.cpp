#include "verify.hpp"

#include <cmath>
#include <exception>
#include <sstream>

#include "covers.hpp"
#include "errors.hpp"
#include "fricke.hpp"
#include "intersect.hpp"
#include "ribbon.hpp"
#include "stats.hpp"

namespace curvelab {

namespace {

struct Failure {
  std::string what;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

std::vector<CyclicWord> classes_up_to(int rank, int length) {
  std::vector<CyclicWord> out;
  for (int len = 1; len <= length; ++len) {
    for (auto& c : cyclic_words_of_length(rank, len)) out.push_back(std::move(c));
  }
  return out;
}

Word random_reduced(Rng& rng, int rank, int len) { return sample_ball_uniform(rank, len, rng); }

std::string check_words() {
  Rng rng(11);
  int tried = 0;
  for (int t = 0; t < 300; ++t) {
    const Word w = random_walk(WalkDistribution::uniform(2), 12, rng);
    const Word u = random_reduced(rng, 2, 5);
    const CyclicWord c = cyclic_reduce(w);
    expect(cyclic_reduce(c.word()) == c, "cyclic_reduce is idempotent: " + w.str());
    expect(reduce(reduce(w)) == reduce(w), "reduce is idempotent: " + w.str());
    expect(cyclic_reduce(u * w * u.inverse()) == c, "conjugation invariance: " + w.str());
    ++tried;
  }
  for (int r = 2; r <= 3; ++r) {
    for (int n = 0; n <= 6; ++n) {
      expect(sphere_size(r, n) == BigInt(reduced_words_of_length(r, n).size()), "sphere size");
    }
  }
  const Alphabet ab(2);
  int pairs = 0;
  for (const auto& c : classes_up_to(2, 4)) {
    for (int n = 0; n <= 8; ++n) {
      const int len = static_cast<int>(c.size());
      const BigInt bound = n >= len ? BigInt(n) * ball_size({2, (n - len) / 2}) : BigInt(0);
      expect(BigInt(conjugates_in_ball(c, n, ab)) <= bound, "conjugacy bound for " + c.str());
      ++pairs;
    }
  }
  return std::to_string(tried) + " random words, " + std::to_string(pairs) + " conjugacy-bound pairs";
}

std::string check_ribbon() {
  expect(signature(RibbonGraph::preset("punctured-torus")) == SurfaceSignature{1, 1, -1}, "torus signature");
  expect(signature(RibbonGraph::preset("pair-of-pants")) == SurfaceSignature{0, 3, -1}, "pants signature");
  expect(signature(RibbonGraph::preset("genus2-boundary1")) == SurfaceSignature{2, 1, -3}, "genus-2 signature");
  const RibbonGraph torus = RibbonGraph::preset("punctured-torus");
  expect(RibbonGraph::parse(torus.serialize()).serialize() == torus.serialize(), "serialization round trip");
  int covers = 0;
  for (int d = 1; d <= 3; ++d) {
    for_each_transitive_rep({2, d, RepMode::free}, [&](const PermRep& phi) {
      const Cover cov = cover(torus, phi);
      expect(signature(cov.graph).euler_characteristic == -d, "Euler characteristic multiplies");
      ++covers;
      return true;
    });
  }
  return std::to_string(covers) + " covers";
}

std::string check_intersect() {
  int compared = 0;
  for (const char* name : {"punctured-torus", "pair-of-pants"}) {
    const RibbonGraph g = RibbonGraph::preset(name);
    for (const auto& c : classes_up_to(2, 5)) {
      const auto fast = self_intersection(g, c);
      const auto brute = brute_min_crossings(g, {path_of_word(g, c)});
      expect(fast == brute, std::string(name) + ": " + c.str() + " gives " + std::to_string(fast) + " vs oracle " +
                                std::to_string(brute));
      expect(self_intersection(g, c.inverse()) == fast, "inversion invariance: " + c.str());
      ++compared;
    }
  }
  const RibbonGraph pants = RibbonGraph::preset("pair-of-pants");
  const auto cls = classes_up_to(2, 3);
  for (std::size_t i = 0; i < cls.size(); ++i) {
    for (std::size_t j = i + 1; j < cls.size(); ++j) {
      if (cls[j] == cls[i].inverse()) continue;
      expect(intersection(pants, cls[i], cls[j]) == intersection(pants, cls[j], cls[i]), "symmetry");
    }
  }
  return std::to_string(compared) + " classes against the strand oracle";
}

std::string check_covers() {
  for (int d = 1; d <= 4; ++d) {
    const BigInt enumerated = BigInt(count_transitive_reps({2, d, RepMode::free})) / factorial(d - 1);
    expect(enumerated == hall_count(2, d), "Hall count at d = " + std::to_string(d));
  }
  expect(BigInt(count_transitive_reps({4, 2, RepMode::closed})) == mednykh_count(2, 2), "Mednykh at genus 2");
  expect(mednykh_count(2, 2) == 15, "genus-2 index-2 count");
  const RibbonGraph torus = RibbonGraph::preset("punctured-torus");
  const RibbonGraph pants = RibbonGraph::preset("pair-of-pants");
  int checked = 0;
  for (const RibbonGraph* g : {&torus, &pants}) {
    for (const auto& c : classes_up_to(2, 4)) {
      const auto i = self_intersection(*g, c);
      DegreeSearchOptions opt;
      opt.d_max = 4;
      opt.class_representatives = true;
      const auto r = simple_lifting_degree(c, *g, opt);
      if (!r.found) continue;
      expect((r.degree == 1) == (i == 0), "deg = 1 iff simple: " + c.str());
      expect(r.degree <= 5 * i + 5, "deg <= 5i + 5: " + c.str());
      const CyclicWord root = primitive_root(c).root;
      for (const char* a : {"a", "b"}) {
        const CyclicWord alpha = cyclic_reduce(a);
        if (root == alpha || root == alpha.inverse()) continue;
        expect(r.degree >= spiraling(c, alpha, *g), "deg >= spiraling: " + c.str());
      }
      ++checked;
    }
  }
  return std::to_string(checked) + " degrees";
}

std::string check_fricke() {
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    const ChartPoint cp{0.2 + 3 * uniform_unit(rng), 4 * uniform_unit(rng) - 2};
    const FrickePoint p = from_chart(cp);
    expect(markov_residual(p) < 1e-12, "chart points lie on the cubic");
    const Word w = reduce(random_walk(WalkDistribution::uniform(2), 14, rng));
    const CyclicWord c = cyclic_reduce(w);
    if (c.empty()) continue;
    try {
      const double l = geodesic_length(c.word(), p).length;
      expect(std::abs(geodesic_length(c.word().inverse(), p).length - l) < 1e-9 * std::max(1.0, l), "inversion");
      expect(std::abs(geodesic_length(w, p).length - l) < 1e-9 * std::max(1.0, l), "conjugation");
    } catch (const DomainError&) {
      // Peripheral or parabolic words have no geodesic; nothing to compare.
    }
  }
  const FrickePoint x = rose_minimizer();
  expect(std::abs(x.x - 2 * std::sqrt(2.0)) < 1e-6 && std::abs(x.y - 2 * std::sqrt(2.0)) < 1e-6 &&
             std::abs(x.z - 4) < 1e-6,
         "rose minimizer");
  const auto m = minimize_length(cyclic_reduce("aabABBab"));
  expect(m.status == MinimizeStatus::converged && m.gradient_norm < 1e-6, "filling word minimizes");
  expect(minimize_length(cyclic_reduce("a")).status == MinimizeStatus::diverged, "simple curve diverges");
  return "50 chart points";
}

std::string check_stats() {
  expect(drift_estimate(WalkDistribution::uniform(2), 1, 10, 1).mean == 1.0, "first step never backtracks");
  ExperimentConfig c;
  c.experiment = "self-int";
  c.n_grid = {10, 20, 30, 40};
  c.samples = 30;
  const auto one = run_experiment(c);
  c.jobs = 3;
  const auto three = run_experiment(c);
  expect(one.csv() == three.csv() && one.json() == three.json(), "tables independent of worker count");
  expect(one.counters.at("intersection_bound_violations") == 0, "i <= L(L-1)/2");
  Rng rng(2);
  for (int t = 0; t < 200; ++t) expect(sample_ball_uniform(2, 8, rng).size() <= 8, "ball sample radius");
  return "reproducible tables";
}

}  // namespace

int run_verification(const std::function<void(const CheckOutcome&)>& report) {
  const std::pair<const char*, std::string (*)()> checks[] = {
      {"words", check_words},     {"ribbon", check_ribbon}, {"intersect", check_intersect},
      {"covers", check_covers},   {"fricke", check_fricke}, {"stats", check_stats},
  };
  int failures = 0;
  for (const auto& [name, fn] : checks) {
    CheckOutcome o;
    o.name = name;
    try {
      o.detail = fn();
      o.passed = true;
    } catch (const Failure& f) {
      o.detail = f.what;
    } catch (const std::exception& e) {
      o.detail = std::string("unexpected error: ") + e.what();
    }
    if (!o.passed) ++failures;
    report(o);
  }
  return failures;
}

}  // namespace curvelab
