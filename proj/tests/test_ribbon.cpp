#include "doctest.h"

#include <algorithm>
#include <random>

#include "errors.hpp"
#include "ribbon.hpp"

using namespace curvelab;

namespace {

PermRep random_rep(std::mt19937_64& rng, int rank, int degree) {
  std::vector<std::vector<int>> images;
  for (int g = 0; g < rank; ++g) {
    std::vector<int> p(static_cast<std::size_t>(degree));
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    images.push_back(std::move(p));
  }
  return PermRep(degree, std::move(images));
}

// Word spelled along a face walk of a rose.
CyclicWord face_word(const RibbonGraph& g, const std::vector<Dart>& face) {
  std::vector<Letter> ls;
  for (Dart d : face) ls.push_back(g.letter_of(d));
  return cyclic_reduce(Word(ls));
}

}  // namespace

TEST_CASE("signatures of the preset spines") {
  CHECK(signature(RibbonGraph::preset("punctured-torus")) == SurfaceSignature{1, 1, -1});
  CHECK(signature(RibbonGraph::preset("pair-of-pants")) == SurfaceSignature{0, 3, -1});
  CHECK(signature(RibbonGraph::rose("aA")) == SurfaceSignature{0, 2, 0});
  CHECK(signature(RibbonGraph::preset("genus2-boundary1")) == SurfaceSignature{2, 1, -3});
  CHECK(signature(RibbonGraph::preset("rose:abcABC")).euler_characteristic == -2);
  CHECK_THROWS_AS(RibbonGraph::preset("klein-bottle"), UsageError);
  CHECK_THROWS_AS(RibbonGraph::rose("abA"), UsageError);
}

TEST_CASE("punctured torus boundary spells the commutator") {
  const RibbonGraph g = RibbonGraph::preset("punctured-torus");
  const auto faces = g.faces();
  REQUIRE(faces.size() == 1);
  const CyclicWord w = face_word(g, faces[0]);
  CHECK(w.size() == 4);
  CHECK(primitive_root(w).power == 1);
  CHECK(letter_counts(w, Alphabet(2)).exponent_sum == std::vector<std::int64_t>{0, 0});
}

TEST_CASE("serialization round trip") {
  const RibbonGraph g = RibbonGraph::preset("genus2-boundary1");
  const RibbonGraph h = RibbonGraph::parse(g.serialize());
  CHECK(h.serialize() == g.serialize());
  CHECK(h.is_rose());
  const RibbonGraph c = cover(g, PermRep(2, {{1, 0}, {0, 1}, {0, 1}, {1, 0}})).graph;
  CHECK(RibbonGraph::parse(c.serialize()).serialize() == c.serialize());
  CHECK_THROWS_AS(RibbonGraph::parse("vertex 0 1\nedge 0 1 a\n"), UsageError);
  CHECK_THROWS_AS(RibbonGraph::parse("ribbon-graph\nvertex 0 1\nedge 0 0 a\n"), UsageError);
  const RibbonGraph commented = RibbonGraph::parse("ribbon-graph # annulus\nvertex 0 1\nedge 0 1 a\n");
  CHECK(signature(commented) == SurfaceSignature{0, 2, 0});
}

TEST_CASE("covers of the punctured torus") {
  const RibbonGraph g = RibbonGraph::preset("punctured-torus");
  const Cover c = cover(g, PermRep(2, {{1, 0}, {0, 1}}));
  CHECK(signature(c.graph) == SurfaceSignature{1, 2, -2});
  const Cover same = cover(g, PermRep::trivial(2));
  CHECK(same.graph.serialize() == RibbonGraph::parse(same.graph.serialize()).serialize());
  CHECK(signature(same.graph) == signature(g));
  const Cover split = cover(g, PermRep(3, {{1, 0, 2}, {0, 1, 2}}));
  CHECK(split.graph.component_count() == 2);
  CHECK_THROWS_AS(signature(split.graph), DomainError);
}

TEST_CASE("Euler characteristic multiplies and boundaries are elevations") {
  std::mt19937_64 rng(7);
  for (const char* name : {"punctured-torus", "pair-of-pants", "genus2-boundary1"}) {
    const RibbonGraph g = RibbonGraph::preset(name);
    for (int d = 1; d <= 5; ++d) {
      for (int trial = 0; trial < 20; ++trial) {
        const PermRep phi = random_rep(rng, g.rank(), d);
        const Cover c = cover(g, phi);
        CHECK(c.graph.component_count() == phi.orbit_count());
        CHECK(c.graph.vertex_count() - c.graph.edge_count() == d * (g.vertex_count() - g.edge_count()));
        // Each base face lifts to the cycles of phi on its spelled word.
        std::vector<std::size_t> lifted_lengths;
        std::vector<std::size_t> predicted;
        for (const auto& f : c.graph.faces()) lifted_lengths.push_back(f.size());
        for (const auto& bf : g.faces()) {
          std::vector<Letter> ls;
          for (Dart x : bf) ls.push_back(g.letter_of(x));
          const auto perm = phi.evaluate(Word(ls));
          std::vector<bool> seen(perm.size(), false);
          for (std::size_t s = 0; s < perm.size(); ++s) {
            if (seen[s]) continue;
            std::size_t k = 0;
            for (std::size_t t = s; !seen[t]; t = static_cast<std::size_t>(perm[t])) seen[t] = true, ++k;
            predicted.push_back(k * bf.size());
          }
        }
        std::sort(lifted_lengths.begin(), lifted_lengths.end());
        std::sort(predicted.begin(), predicted.end());
        CHECK(lifted_lengths == predicted);
        // Face walks of the cover project to powers of base face words.
        for (const auto& f : c.graph.faces()) {
          const CyclicWord w = face_word(c.graph, f);
          const CyclicWord root = primitive_root(w).root;
          bool matches = false;
          for (const auto& bf : g.faces()) matches = matches || face_word(g, bf) == root;
          CHECK(matches);
        }
      }
    }
  }
}

TEST_CASE("elevations follow cycles of the image permutation") {
  const RibbonGraph g = RibbonGraph::preset("punctured-torus");
  auto e = elevations(cyclic_reduce("a"), PermRep(2, {{1, 0}, {0, 1}}), g);
  REQUIRE(e.size() == 1);
  CHECK(e[0].winding == 2);
  e = elevations(cyclic_reduce("b"), PermRep(2, {{1, 0}, {0, 1}}), g);
  REQUIRE(e.size() == 2);
  CHECK(e[0].winding == 1);
  CHECK(e[1].winding == 1);
  e = elevations(cyclic_reduce("aab"), PermRep(2, {{1, 0}, {0, 1}}), g);
  CHECK(e.size() == 2);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 1 + trial % 5;
    const PermRep phi = random_rep(rng, 2, d);
    const CyclicWord gamma = cyclic_reduce("abbAbaB");
    const Cover c = cover(g, phi);
    int total = 0;
    for (const Elevation& el : elevations(gamma, phi, g, c)) {
      total += el.winding;
      std::vector<Letter> projected;
      for (Dart x : el.path.darts()) projected.push_back(g.letter_of(c.project(x)));
      Word power;
      for (int k = 0; k < el.winding; ++k) power = power * gamma.word();
      CHECK(Word(projected) == power);
      CHECK(spell(c.graph, el.path) == power);
    }
    CHECK(total == d);
  }
}

TEST_CASE("permutation representations") {
  const PermRep phi(3, {{1, 2, 0}, {0, 2, 1}});
  CHECK(phi.transitive());
  CHECK(phi.cycle_notation() == "a=(1 2 3);b=(1)(2 3)");
  CHECK(phi.evaluate(Word::parse("aA")) == std::vector<int>{0, 1, 2});
  CHECK(phi.evaluate(Word::parse("ab")) == std::vector<int>{2, 1, 0});
  CHECK_FALSE(PermRep(2, {{0, 1}, {0, 1}}).transitive());
  CHECK(PermRep(2, {{1, 0}, {1, 0}}).satisfies_surface_relation());
  CHECK_THROWS_AS(PermRep(2, {{0, 0}}), UsageError);
  const PermRep s3(3, {{1, 0, 2}, {0, 2, 1}});
  CHECK_FALSE(s3.satisfies_surface_relation());
}
