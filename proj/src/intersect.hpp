#pragma once

// Geometric intersection numbers of closed edge paths on ribbon graphs.
//
// Primitive classes are handled by linked-pair counting: two lifts of the
// paths to the universal cover (a planar tree) cross iff, along their maximal
// common segment, they leave on opposite sides at the two ends.  Each pair of
// lifts is enumerated once by the passage at which the common segment starts.
// Proper powers use the k-parallel-strand model: i(w^k) = k^2 i(w) + k - 1.

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "errors.hpp"
#include "ribbon.hpp"

namespace curvelab {

template <class G>
concept RibbonView = requires(const G& g, Dart d, int v) {
  { g.pair(d) } -> std::convertible_to<Dart>;
  { g.vertex(d) } -> std::convertible_to<int>;
  { g.position(d) } -> std::convertible_to<int>;
  { g.valence(v) } -> std::convertible_to<int>;
};

// A degree-d cover of a ribbon graph presented implicitly: dart (b, s) is
// encoded b * d + s.  Nothing is allocated per cover.
class ImplicitCover {
 public:
  ImplicitCover(const RibbonGraph& base, const PermRep& phi) : base_(&base), phi_(&phi), degree_(phi.degree()) {}

  Dart lift(Dart b, int sheet) const { return b * degree_ + sheet; }
  Dart pair(Dart d) const {
    const Dart b = d / degree_;
    return base_->pair(b) * degree_ + phi_->apply(base_->letter_of(b), d % degree_);
  }
  int vertex(Dart d) const { return base_->vertex(d / degree_) * degree_ + d % degree_; }
  int position(Dart d) const { return base_->position(d / degree_); }
  int valence(int v) const { return base_->valence(v / degree_); }

 private:
  const RibbonGraph* base_;
  const PermRep* phi_;
  int degree_;
};

namespace detail {

inline std::size_t wrap(std::ptrdiff_t i, std::size_t n) {
  const auto m = static_cast<std::ptrdiff_t>(n);
  return static_cast<std::size_t>(((i % m) + m) % m);
}

// +1 when (s, e1, e2) occur in counter-clockwise order around their vertex.
template <RibbonView G>
int orientation(const G& g, Dart s, Dart e1, Dart e2) {
  const int k = g.valence(g.vertex(s));
  const int p = g.position(s);
  const int o1 = ((g.position(e1) - p) % k + k) % k;
  const int o2 = ((g.position(e2) - p) % k + k) % k;
  return o1 < o2 ? 1 : -1;
}

// Chords {a, b} and {c, d} at one vertex, all four darts distinct.
template <RibbonView G>
bool interleaved(const G& g, Dart a, Dart b, Dart c, Dart d) {
  const int pa = g.position(a);
  const int pb = g.position(b);
  const int lo = std::min(pa, pb);
  const int hi = std::max(pa, pb);
  auto inside = [&](Dart x) {
    const int px = g.position(x);
    return lo < px && px < hi;
  };
  return inside(c) != inside(d);
}

// Smallest period of a cyclic dart sequence.
inline std::size_t dart_period(std::span<const Dart> p) {
  const std::size_t n = p.size();
  for (std::size_t q = 1; q < n; ++q) {
    if (n % q != 0) continue;
    bool ok = true;
    for (std::size_t i = q; i < n && ok; ++i) ok = p[i] == p[i - q];
    if (ok) return q;
  }
  return n;
}

// Counts ordered pairs (passage i of P, passage j of Q) whose lifts through a
// common vertex have that vertex as first common vertex along P and are
// linked.  When P and Q are the same sequence, i == j is skipped.
template <RibbonView G>
std::int64_t linked_passages(const G& g, std::span<const Dart> P, std::span<const Dart> Q, bool same,
                             bool stop_at_first) {
  const std::size_t n = P.size();
  const std::size_t m = Q.size();
  const std::size_t guard = n + m + 2;
  auto p = [&](std::ptrdiff_t i) { return P[wrap(i, n)]; };
  auto q = [&](std::ptrdiff_t j) { return Q[wrap(j, m)]; };

  // Bucket Q passages by vertex.
  std::vector<std::pair<int, std::ptrdiff_t>> qv(m);
  for (std::size_t j = 0; j < m; ++j) qv[j] = {g.vertex(Q[j]), static_cast<std::ptrdiff_t>(j)};
  std::sort(qv.begin(), qv.end());

  std::int64_t count = 0;
  for (std::size_t ii = 0; ii < n; ++ii) {
    const auto i = static_cast<std::ptrdiff_t>(ii);
    const int v = g.vertex(P[ii]);
    auto it = std::lower_bound(qv.begin(), qv.end(), std::pair<int, std::ptrdiff_t>{v, -1});
    const Dart a_i = g.pair(p(i - 1));
    const Dart b_i = p(i);
    for (; it != qv.end() && it->first == v; ++it) {
      const std::ptrdiff_t j = it->second;
      if (same && j == i) continue;
      const Dart a_j = g.pair(q(j - 1));
      const Dart b_j = q(j);
      if (a_i == b_j || a_i == a_j) continue;  // segment began earlier along P
      bool linked;
      if (b_i == b_j) {
        std::size_t t = 1;
        while (p(i + static_cast<std::ptrdiff_t>(t)) == q(j + static_cast<std::ptrdiff_t>(t))) {
          if (++t > guard) throw std::logic_error("parallel overlap does not terminate");
        }
        const auto tt = static_cast<std::ptrdiff_t>(t);
        const int ex = orientation(g, b_i, a_i, a_j);
        const int ey = orientation(g, g.pair(p(i + tt - 1)), p(i + tt), q(j + tt));
        linked = ex == ey;
      } else if (b_i == a_j) {
        std::size_t t = 1;
        while (p(i + static_cast<std::ptrdiff_t>(t)) == g.pair(q(j - 1 - static_cast<std::ptrdiff_t>(t)))) {
          if (++t > guard) throw std::logic_error("antiparallel overlap does not terminate");
        }
        const auto tt = static_cast<std::ptrdiff_t>(t);
        const int ex = orientation(g, b_i, a_i, b_j);
        const int ey = orientation(g, g.pair(p(i + tt - 1)), p(i + tt), g.pair(q(j - tt - 1)));
        linked = ex == ey;
      } else {
        linked = interleaved(g, a_i, b_i, a_j, b_j);
      }
      if (linked) {
        ++count;
        if (stop_at_first) return count;
      }
    }
  }
  return count;
}

}  // namespace detail

// Self-intersection of a closed reduced dart sequence on any ribbon view.
template <RibbonView G>
std::int64_t self_intersection_of(const G& g, std::span<const Dart> path) {
  if (path.empty()) throw DomainError("self-intersection of the trivial path");
  const std::size_t root = detail::dart_period(path);
  const auto k = static_cast<std::int64_t>(path.size() / root);
  auto r = path.first(root);
  const std::int64_t prim = detail::linked_passages(g, r, r, true, false) / 2;
  return k * k * prim + (k - 1);
}

template <RibbonView G>
bool is_simple_path(const G& g, std::span<const Dart> path) {
  const std::size_t root = detail::dart_period(path);
  if (root != path.size()) return false;
  return detail::linked_passages(g, path, path, true, true) == 0;
}

std::int64_t self_intersection(const RibbonGraph& g, const EdgePath& p);
std::int64_t self_intersection(const RibbonGraph& rose, const CyclicWord& c);

// Geometric intersection of two classes.  Throws DomainError when they are
// equal up to inversion; same-root powers give 2 k m i(root).
std::int64_t intersection(const RibbonGraph& g, const EdgePath& p, const EdgePath& q);
std::int64_t intersection(const RibbonGraph& rose, const CyclicWord& p, const CyclicWord& q);

// Independent oracle: minimum total chord crossings over every ordering of
// the strands inside every edge band.  Counts self-crossings of each path and
// crossings between paths.  Throws BudgetExceeded when the product of
// per-edge factorials exceeds `budget`.
std::int64_t brute_min_crossings(const RibbonGraph& g, const std::vector<EdgePath>& paths,
                                 std::uint64_t budget = 5'000'000);

// Largest self-intersection, in the annular cover of the simple class alpha,
// of a lift of gamma whose two ends exit the same end of the annulus.
// Rose spines only.
std::int64_t spiraling(const CyclicWord& gamma, const CyclicWord& alpha, const RibbonGraph& rose);

}  // namespace curvelab
