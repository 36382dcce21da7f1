#pragma once

// Ribbon graphs (fatgraphs): darts with an edge involution and a cyclic
// (counter-clockwise) order at each vertex.  Surfaces with boundary are
// carried by their spines; punctures are treated as boundary components.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "words.hpp"

namespace curvelab {

using Dart = std::int32_t;

struct EdgeInfo {
  Dart plus = 0;    // traversed when reading the label letter
  Dart minus = 0;   // traversed when reading its inverse
  Letter label = 0;
  int sheet = -1;   // sheet of the plus end in a cover; -1 on a base graph
};

class RibbonGraph {
 public:
  RibbonGraph(std::vector<std::vector<Dart>> vertices, std::vector<EdgeInfo> edges);

  // One-vertex rose; `order` lists every letter of the alphabet exactly once
  // in counter-clockwise order.  Generator i owns darts 2i (plus) and 2i+1.
  static RibbonGraph rose(const std::vector<Letter>& order);
  static RibbonGraph rose(std::string_view order) ;
  // "punctured-torus", "pair-of-pants", "genus2-boundary1", or "rose:<order>".
  static RibbonGraph preset(std::string_view name);

  // Text form:
  //   ribbon-graph
  //   vertex <d0> <d1> ...        one line per vertex, darts in cyclic order
  //   edge <plus> <minus> <letter> [sheet]
  static RibbonGraph parse(std::string_view text);
  std::string serialize() const;

  int dart_count() const noexcept { return static_cast<int>(pair_.size()); }
  int vertex_count() const noexcept { return static_cast<int>(vertices_.size()); }
  int edge_count() const noexcept { return static_cast<int>(edges_.size()); }

  Dart pair(Dart d) const { return pair_[static_cast<std::size_t>(d)]; }
  // Counter-clockwise successor around the vertex of d.
  Dart next(Dart d) const { return next_[static_cast<std::size_t>(d)]; }
  int vertex(Dart d) const { return vertex_of_[static_cast<std::size_t>(d)]; }
  int position(Dart d) const { return position_[static_cast<std::size_t>(d)]; }
  int valence(int v) const { return static_cast<int>(vertices_[static_cast<std::size_t>(v)].size()); }
  const std::vector<Dart>& darts_at(int v) const { return vertices_[static_cast<std::size_t>(v)]; }

  const std::vector<EdgeInfo>& edges() const noexcept { return edges_; }
  const EdgeInfo& edge_of(Dart d) const { return edges_[static_cast<std::size_t>(edge_index_[static_cast<std::size_t>(d)])]; }
  int edge_index(Dart d) const { return edge_index_[static_cast<std::size_t>(d)]; }
  bool is_plus(Dart d) const { return edge_of(d).plus == d; }
  // Letter spelled by traversing d.
  Letter letter_of(Dart d) const;

  // Single vertex whose edges carry each generator 1..r exactly once.
  bool is_rose() const noexcept { return rose_rank_ > 0; }
  int rank() const noexcept { return rose_rank_; }
  // Outgoing dart spelling letter l; roses only.
  Dart dart_of(Letter l) const;

  // Boundary walks: cycles of d -> next(pair(d)).
  std::vector<std::vector<Dart>> faces() const;
  int component_count() const;

 private:
  std::vector<std::vector<Dart>> vertices_;
  std::vector<EdgeInfo> edges_;
  std::vector<Dart> pair_;
  std::vector<Dart> next_;
  std::vector<int> vertex_of_;
  std::vector<int> position_;
  std::vector<int> edge_index_;
  std::vector<Dart> letter_dart_;  // indexed by letter_index, roses only
  int rose_rank_ = 0;
};

struct SurfaceSignature {
  int genus = 0;
  int boundary_count = 0;
  int euler_characteristic = 0;
  friend bool operator==(const SurfaceSignature&, const SurfaceSignature&) = default;
};

SurfaceSignature signature(const RibbonGraph& g);

// A permutation of {0..d-1} per generator.  Reading letter x moves sheet s to
// image(x)[s]; words act left to right.
class PermRep {
 public:
  PermRep(int degree, std::vector<std::vector<int>> images);
  static PermRep trivial(int rank);

  int degree() const noexcept { return degree_; }
  int rank() const noexcept { return static_cast<int>(images_.size()); }
  const std::vector<int>& image(int generator) const { return images_[static_cast<std::size_t>(generator)]; }

  int apply(Letter l, int sheet) const {
    const auto g = static_cast<std::size_t>(generator_of(l));
    return l > 0 ? images_[g][static_cast<std::size_t>(sheet)] : inverses_[g][static_cast<std::size_t>(sheet)];
  }
  std::vector<int> evaluate(const Word& w) const;

  bool transitive() const noexcept { return transitive_; }
  int orbit_count() const noexcept { return orbits_; }
  // prod_i [x_{2i-1}, x_{2i}] == id with [x, y] = x y x^-1 y^-1 read left to right.
  bool satisfies_surface_relation() const;

  // "a=(1 2);b=(1)(2)", sheets printed 1-based.
  std::string cycle_notation() const;

 private:
  int degree_;
  std::vector<std::vector<int>> images_;
  std::vector<std::vector<int>> inverses_;
  bool transitive_ = false;
  int orbits_ = 0;
};

std::string cycles_to_string(const std::vector<int>& perm);

// Cyclic dart sequence forming a closed, reduced edge path.
class EdgePath {
 public:
  EdgePath() = default;
  EdgePath(const RibbonGraph& g, std::vector<Dart> darts);

  std::size_t size() const noexcept { return darts_.size(); }
  bool empty() const noexcept { return darts_.empty(); }
  Dart operator[](std::size_t i) const { return darts_[i]; }
  const std::vector<Dart>& darts() const noexcept { return darts_; }

 private:
  std::vector<Dart> darts_;
};

// Path spelling a cyclically reduced word on a rose.
EdgePath path_of_word(const RibbonGraph& rose, const CyclicWord& c);
// Letters spelled by a path (inverse of path_of_word on roses, projection on covers).
Word spell(const RibbonGraph& g, const EdgePath& p);

struct Cover {
  RibbonGraph graph;
  int degree = 1;
  Dart lift(Dart base, int sheet) const { return base * degree + sheet; }
  Dart project(Dart d) const { return d / degree; }
  int sheet(Dart d) const { return d % degree; }
};

Cover cover(const RibbonGraph& base, const PermRep& phi);

struct Elevation {
  int start_sheet = 0;
  int winding = 1;
  EdgePath path;  // spells gamma^winding in the cover
};

// One elevation per cycle of phi(gamma), ordered by smallest sheet in the cycle.
std::vector<Elevation> elevations(const CyclicWord& gamma, const PermRep& phi, const RibbonGraph& base,
                                  const Cover& lifted);
std::vector<Elevation> elevations(const CyclicWord& gamma, const PermRep& phi, const RibbonGraph& base);

}  // namespace curvelab
