#include "doctest.h"

#include <cmath>
#include <random>

#include "errors.hpp"
#include "fricke.hpp"

using namespace curvelab;

namespace {

double len(std::string_view w, const FrickePoint& p) { return geodesic_length(Word::parse(w), p).length; }

FrickePoint random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> L(0.3, 3.0), s(-2.0, 2.0);
  return from_chart({L(rng), s(rng)});
}

std::string swap_ab(std::string w) {
  for (char& c : w) c = c == 'a' ? 'b' : c == 'b' ? 'a' : c == 'A' ? 'B' : c == 'B' ? 'A' : c;
  return w;
}

}  // namespace

TEST_CASE("holonomy") {
  const Holonomy h = holonomy({3, 3, 3});
  CHECK(h.A.trace() == doctest::Approx(3).epsilon(1e-12));
  CHECK(h.B.trace() == doctest::Approx(3).epsilon(1e-12));
  CHECK((h.A * h.B).trace() == doctest::Approx(3).epsilon(1e-12));
  CHECK(h.A.det() == doctest::Approx(1).epsilon(1e-12));
  CHECK(h.B.det() == doctest::Approx(1).epsilon(1e-12));
  // The sample pair ((1,1),(1,2)), ((1,-1),(-1,2)) has the same traces.
  const Mat2 A{1, 1, 1, 2}, B{1, -1, -1, 2};
  CHECK(A.trace() == 3);
  CHECK(B.trace() == 3);
  CHECK((A * B).trace() == 3);
  CHECK_THROWS_AS(holonomy({3, 3, 10}), DomainError);
  CHECK_THROWS_AS(holonomy({1, 1, 1}), DomainError);

  std::mt19937_64 rng(1);
  for (int t = 0; t < 200; ++t) {
    const FrickePoint p = random_point(rng);
    CHECK(markov_residual(p) < 1e-9);
    const Holonomy m = holonomy(p);
    const Mat2 comm = m.A * m.B * inverse(m.A) * inverse(m.B);
    CHECK(std::abs(comm.trace() + 2) < 1e-9 * std::max(1.0, p.x * p.y * p.z));
    CHECK(std::abs(m.A.trace() - p.x) < 1e-9 * p.x);
    CHECK(std::abs(m.B.trace() - p.y) < 1e-9 * p.y);
    CHECK(std::abs((m.A * m.B).trace() - p.z) < 1e-9 * p.z);
    const double tr_aB = (m.A * inverse(m.B)).trace();
    CHECK(std::abs(p.z + tr_aB - p.x * p.y) < 1e-9 * p.x * p.y);
    const ChartPoint c = to_chart(p);
    const FrickePoint q = from_chart(c);
    CHECK(std::abs(q.x - p.x) < 1e-9 * p.x);
    CHECK(std::abs(q.y - p.y) < 1e-9 * p.y);
    CHECK(std::abs(q.z - p.z) < 1e-9 * p.z);
  }
}

TEST_CASE("geodesic lengths") {
  const FrickePoint p{3, 3, 3};
  CHECK(len("a", p) == doctest::Approx(1.924847).epsilon(1e-6));
  CHECK(len("ab", p) == doctest::Approx(1.924847).epsilon(1e-6));
  CHECK(len("a", p) == doctest::Approx(2 * std::acosh(1.5)).epsilon(1e-12));
  CHECK_THROWS_AS(len("abAB", p), DomainError);
  CHECK_THROWS_AS(len("", p), DomainError);
  CHECK_THROWS_AS(len("abc", p), UsageError);

  std::mt19937_64 rng(2);
  for (int t = 0; t < 100; ++t) {
    const FrickePoint q = random_point(rng);
    for (std::string w : {"aab", "abAbb", "aaBaBBab", "abbbAB"}) {
      const double v = len(w, q);
      CHECK(v > 0);
      CHECK(std::abs(len(Word::parse(w).inverse().str(), q) - v) < 1e-9 * std::max(1.0, v));
      CHECK(std::abs(len(w.substr(1) + w.substr(0, 1), q) - v) < 1e-9 * std::max(1.0, v));
      CHECK(std::abs(len("b" + w + "B", q) - v) < 1e-9 * std::max(1.0, v));
      const FrickePoint swapped{q.y, q.x, q.z};
      CHECK(std::abs(len(swap_ab(w), swapped) - v) < 1e-9 * std::max(1.0, v));
    }
  }
  // Long words stay finite through the scaled product.
  std::string longw;
  for (int i = 0; i < 400; ++i) longw += "aab";
  const auto r = geodesic_length(Word::parse(longw), {50, 50, 2500 * (1 + std::sqrt(1 - 4.0 * 2 / 2500.0)) / 2});
  CHECK(std::isfinite(r.length));
  CHECK(r.length > 0);
  CHECK(std::isfinite(r.log_abs_trace));
  CHECK(len("aab", p) * 400 == doctest::Approx(geodesic_length(Word::parse(longw), p).length).epsilon(1e-9));
}

TEST_CASE("collar width") {
  CHECK(collar_width(2 * std::asinh(1.0)) == doctest::Approx(0.881374).epsilon(1e-6));
  CHECK(collar_width(0.01) > collar_width(0.1));
  CHECK(collar_width(10) < 0.02);
  CHECK(collar_width(10) > 0);
  CHECK_THROWS_AS(collar_width(0), DomainError);
}

TEST_CASE("minimizers") {
  const auto a = minimize_length(cyclic_reduce("a"));
  CHECK(a.status == MinimizeStatus::diverged);

  const FrickePoint rose = rose_minimizer();
  CHECK(std::abs(rose.x - rose.y) < 1e-6);
  CHECK(rose.x == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-8));
  CHECK(rose.z == doctest::Approx(4).epsilon(1e-8));
  const std::vector<Word> ab{Word::parse("a"), Word::parse("b")};
  auto obj = [&](const FrickePoint& p) { return len("a", p) + len("b", p); };
  CHECK(obj(rose) <= obj({3, 3, 3}));
  CHECK(obj(rose) <= obj({3, 3, 6}));
  CHECK(tangent_gradient_norm(ab, rose) < 1e-6);

  const auto sym = minimize_length({Word::parse("a"), Word::parse("b"), Word::parse("ab")});
  REQUIRE(sym.status == MinimizeStatus::converged);
  CHECK(std::abs(sym.point.x - sym.point.y) + std::abs(sym.point.y - sym.point.z) < 1e-4);
  CHECK(sym.point.x == doctest::Approx(3).epsilon(1e-6));

  std::mt19937_64 rng(20);
  std::vector<Letter> w;
  while (w.size() < 20) {
    const Letter l = letter_from_index(static_cast<int>(rng() % 4));
    if (!w.empty() && l == inverse(w.back())) continue;
    w.push_back(l);
  }
  const CyclicWord g = cyclic_reduce(Word(w));
  const auto r = minimize_length(g);
  REQUIRE(r.status == MinimizeStatus::converged);
  CHECK(r.gradient_norm < 1e-6);
  CHECK(markov_residual(r.point) < 1e-9);
  CHECK(tangent_gradient_norm({g.word()}, r.point) < 1e-6);
  // A local perturbation along the locus does not decrease the length.
  const ChartPoint c = to_chart(r.point);
  for (double dL : {-1e-3, 1e-3})
    for (double ds : {-1e-3, 1e-3})
      CHECK(geodesic_length(g.word(), from_chart({c.L + dL, c.s + ds})).length >= r.value - 1e-9);
}

TEST_CASE("distance and systole proxies") {
  const FrickePoint p{3, 3, 3};
  const FrickePoint q{3, 3, 6};
  CHECK(distance_proxy(p, p) == 0);
  CHECK(distance_proxy(p, q) == doctest::Approx(distance_proxy(q, p)));
  CHECK(distance_proxy(p, q) > 0);
  CHECK(systole_proxy(p, 4) == doctest::Approx(1.924847).epsilon(1e-6));
  double prev = systole_proxy(q, 2);
  for (int L = 3; L <= 6; ++L) {
    const double cur = systole_proxy(q, L);
    CHECK(cur <= prev);
    prev = cur;
  }
  const FrickePoint thin = from_chart({0.2, 0.0});  // x close to 2, y and z large
  REQUIRE(thin.y > 3 * thin.x);
  CHECK(systole_proxy(thin, 5) == doctest::Approx(len("a", thin)));
  CHECK_THROWS_AS(systole_proxy(p, 1), UsageError);
}
