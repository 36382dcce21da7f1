#pragma once

// Finite covers of rose spines: enumeration of transitive permutation
// representations, subgroup-counting formulas, and the brute-force search for
// the least degree of a cover carrying a simple elevation.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ribbon.hpp"
#include "words.hpp"

namespace curvelab {

using Perm = std::vector<int>;

// All permutations of {0..d-1} in lexicographic order.
const std::vector<Perm>& symmetric_group(int d);

enum class RepMode {
  free,    // any tuple in S_d^r
  closed,  // additionally prod [x_{2i-1}, x_{2i}] = id
};

struct RepSpace {
  int rank = 2;
  int degree = 1;
  RepMode mode = RepMode::free;
};

// Visits every transitive representation in the space in index order (the
// tuple of lexicographic permutation ranks, first generator most
// significant).  The visitor returns false to stop.  Returns the number visited.
std::uint64_t for_each_transitive_rep(const RepSpace& space, const std::function<bool(const PermRep&)>& visit);
std::uint64_t count_transitive_reps(const RepSpace& space);

// One representative per orbit of transitive representations under
// simultaneous conjugation, in increasing canonical order.  Cached.
const std::vector<PermRep>& transitive_class_representatives(int rank, int degree);
// Orbit count under simultaneous conjugation, by canonical form.
std::uint64_t count_transitive_classes(const RepSpace& space);
// The same count by Burnside's lemma: the average over sigma in S_d of the
// number of transitive tuples commuting with sigma.
std::uint64_t count_transitive_classes_burnside(const RepSpace& space);

// Subgroups of index d in the free group of rank r, by Hall's recursion.
BigInt hall_count(int rank, int d);

using Partition = std::vector<int>;
std::vector<Partition> partitions(int d);
// Dimension of the irreducible character of S_d indexed by lambda (hook length formula).
BigInt hook_degree(const Partition& lambda);
// Subgroups of index d in the closed genus-g surface group, via Mednykh's formula.
BigInt mednykh_count(int genus, int d);

struct DegreeSearchOptions {
  int d_max = 6;
  // Search one representation per conjugacy class instead of every tuple.
  // Equivalent, since relabeling sheets preserves simplicity of elevations.
  bool class_representatives = false;
  int jobs = 1;
};

struct DegreeSearchResult {
  bool found = false;
  int degree = 0;  // valid when found
  int d_max = 0;
  std::optional<PermRep> witness;
  int elevation_start_sheet = 0;
  int elevation_winding = 0;
};

// Least d <= d_max for which some transitive degree-d cover of the rose has a
// simple elevation of gamma.  Deterministic regardless of jobs: the witness is
// the first in enumeration order.
DegreeSearchResult simple_lifting_degree(const CyclicWord& gamma, const RibbonGraph& rose,
                                         const DegreeSearchOptions& options = {});

// Whether some elevation of gamma in the cover given by phi is simple; sets
// the first such elevation's start sheet and winding.
bool has_simple_elevation(const CyclicWord& gamma, const RibbonGraph& rose, const PermRep& phi,
                          int* start_sheet = nullptr, int* winding = nullptr);

}  // namespace curvelab
