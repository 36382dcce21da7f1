#include "doctest.h"

#include "covers.hpp"
#include "errors.hpp"
#include "intersect.hpp"

using namespace curvelab;

namespace {
BigInt fact(int d) {
  BigInt f = 1;
  for (int i = 2; i <= d; ++i) f *= i;
  return f;
}
}  // namespace

TEST_CASE("symmetric groups") {
  CHECK(symmetric_group(1).size() == 1);
  CHECK(symmetric_group(4).size() == 24);
  CHECK(symmetric_group(3).front() == Perm{0, 1, 2});
  CHECK(symmetric_group(3).back() == Perm{2, 1, 0});
  CHECK_THROWS_AS(symmetric_group(9), UsageError);
}

TEST_CASE("transitive representation counts") {
  CHECK(count_transitive_reps({2, 1, RepMode::free}) == 1);
  CHECK(count_transitive_reps({2, 2, RepMode::free}) == 3);
  for (int d = 1; d <= 5; ++d) {
    const BigInt enumerated = count_transitive_reps({2, d, RepMode::free});
    CHECK(enumerated % fact(d - 1) == 0);
    CHECK(enumerated / fact(d - 1) == hall_count(2, d));
  }
  for (int d = 1; d <= 4; ++d)
    CHECK(BigInt(count_transitive_reps({3, d, RepMode::free})) / fact(d - 1) == hall_count(3, d));
}

TEST_CASE("Hall recursion") {
  CHECK(hall_count(2, 1) == 1);
  CHECK(hall_count(2, 2) == 3);
  CHECK(hall_count(2, 3) == 13);
  CHECK(hall_count(2, 4) == 71);
  CHECK(hall_count(2, 5) == 461);
  // Index-2 subgroups of F_r are kernels of the 2^r - 1 nonzero maps to Z/2.
  for (int r = 2; r <= 6; ++r) CHECK(hall_count(r, 2) == (BigInt(1) << r) - 1);
  CHECK(hall_count(2, 40) > 0);
}

TEST_CASE("partitions and hook lengths") {
  CHECK(partitions(4).size() == 5);
  CHECK(partitions(8).size() == 22);
  CHECK(hook_degree({2, 1}) == 2);
  CHECK(hook_degree({3, 2}) == 5);
  CHECK(hook_degree({4, 2, 1}) == 35);
  for (int d = 1; d <= 8; ++d) {
    BigInt sum = 0;
    for (const auto& lam : partitions(d)) {
      const BigInt f = hook_degree(lam);
      CHECK(fact(d) % f == 0);
      sum += f * f;
    }
    CHECK(sum == fact(d));
  }
  CHECK_THROWS_AS(hook_degree({1, 2}), UsageError);
}

TEST_CASE("Mednykh formula against closed-mode enumeration") {
  CHECK(mednykh_count(2, 1) == 1);
  CHECK(mednykh_count(2, 2) == 15);
  for (int d = 1; d <= 3; ++d)
    CHECK(BigInt(count_transitive_reps({4, d, RepMode::closed})) / fact(d - 1) == mednykh_count(2, d));
  // Genus 1 is Z^2: index-d subgroups number sigma(d).
  CHECK(mednykh_count(1, 4) == 7);
  CHECK(mednykh_count(1, 6) == 12);
  // Index-2 subgroups of a genus-g group: 2^{2g} - 1.
  CHECK(mednykh_count(3, 2) == 63);
}

TEST_CASE("conjugacy classes of transitive representations") {
  for (int d = 1; d <= 5; ++d) {
    const RepSpace space{2, d, RepMode::free};
    CHECK(count_transitive_classes(space) == count_transitive_classes_burnside(space));
    CHECK(transitive_class_representatives(2, d).size() == count_transitive_classes(space));
  }
  CHECK(count_transitive_classes({2, 2, RepMode::free}) == 3);
  CHECK(count_transitive_classes({2, 3, RepMode::free}) == 7);
  const RepSpace closed{4, 3, RepMode::closed};
  CHECK(count_transitive_classes(closed) == count_transitive_classes_burnside(closed));
  CHECK(count_transitive_classes(closed) < BigInt(count_transitive_reps(closed)));
}

TEST_CASE("simple lifting degree") {
  const RibbonGraph torus = RibbonGraph::preset("punctured-torus");
  const RibbonGraph pants = RibbonGraph::preset("pair-of-pants");
  auto deg = [](std::string_view w, const RibbonGraph& g, bool fast = false, int jobs = 1) {
    return simple_lifting_degree(cyclic_reduce(w), g, {4, fast, jobs});
  };
  CHECK(deg("a", torus).degree == 1);
  CHECK(deg("aab", torus).degree == 1);
  const auto r = deg("aab", pants);
  REQUIRE(r.found);
  CHECK(r.degree >= 2);
  CHECK(r.degree <= 10);
  REQUIRE(r.witness);
  CHECK(r.witness->transitive());
  CHECK(r.witness->degree() == r.degree);
  // The witness really has a simple elevation.
  const Cover c = cover(pants, *r.witness);
  bool simple = false;
  for (const auto& e : elevations(cyclic_reduce("aab"), *r.witness, pants, c))
    if (e.start_sheet == r.elevation_start_sheet) {
      CHECK(e.winding == r.elevation_winding);
      simple = self_intersection(c.graph, e.path) == 0;
    }
  CHECK(simple);
  CHECK(deg("aa", torus).degree == 2);
}

TEST_CASE("degree search modes and worker counts agree") {
  const RibbonGraph torus = RibbonGraph::preset("punctured-torus");
  for (int n = 1; n <= 5; ++n) {
    for (const auto& c : cyclic_words_of_length(2, n)) {
      const auto slow = simple_lifting_degree(c, torus, {4, false, 1});
      const auto fast = simple_lifting_degree(c, torus, {4, true, 1});
      CHECK(slow.found == fast.found);
      CHECK(slow.degree == fast.degree);
      CHECK((slow.degree == 1) == (slow.found && self_intersection(torus, c) == 0));
      CHECK(simple_lifting_degree(c.inverse(), torus, {4, true, 1}).degree == fast.degree);
      if (slow.found) CHECK(slow.degree <= 5 * self_intersection(torus, c) + 5);
      for (Letter x : {Letter{1}, Letter{2}}) {
        const CyclicWord alpha = cyclic_reduce(Word({x}));
        const CyclicWord root = primitive_root(c).root;
        if (root == alpha || root == alpha.inverse() || !slow.found) continue;
        CHECK(spiraling(c, alpha, torus) <= slow.degree);
      }
    }
  }
  const CyclicWord w = cyclic_reduce("aabAAB");
  const auto one = simple_lifting_degree(w, torus, {5, false, 1});
  const auto three = simple_lifting_degree(w, torus, {5, false, 3});
  CHECK(one.degree == three.degree);
  REQUIRE(one.witness);
  REQUIRE(three.witness);
  CHECK(one.witness->cycle_notation() == three.witness->cycle_notation());
  const auto fast1 = simple_lifting_degree(w, torus, {5, true, 1});
  const auto fast3 = simple_lifting_degree(w, torus, {5, true, 3});
  CHECK(fast1.witness->cycle_notation() == fast3.witness->cycle_notation());
}
