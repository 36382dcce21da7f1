#include "intersect.hpp"

#include <unordered_map>

namespace curvelab {

std::int64_t self_intersection(const RibbonGraph& g, const EdgePath& p) {
  return self_intersection_of(g, std::span<const Dart>(p.darts()));
}

std::int64_t self_intersection(const RibbonGraph& rose, const CyclicWord& c) {
  if (c.empty()) throw DomainError("self-intersection of the trivial class");
  return self_intersection(rose, path_of_word(rose, c));
}

namespace {

std::vector<Dart> reversed(const RibbonGraph& g, std::span<const Dart> p) {
  std::vector<Dart> out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = g.pair(p[p.size() - 1 - i]);
  return out;
}

bool is_rotation(std::span<const Dart> a, std::span<const Dart> b) {
  if (a.size() != b.size()) return false;
  const std::size_t n = a.size();
  for (std::size_t r = 0; r < n; ++r) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) ok = a[i] == b[(i + r) % n];
    if (ok) return true;
  }
  return false;
}

}  // namespace

std::int64_t intersection(const RibbonGraph& g, const EdgePath& p, const EdgePath& q) {
  if (p.empty() || q.empty()) throw DomainError("intersection with the trivial path");
  std::span<const Dart> ps(p.darts());
  std::span<const Dart> qs(q.darts());
  const std::size_t rp = detail::dart_period(ps);
  const std::size_t rq = detail::dart_period(qs);
  const auto kp = static_cast<std::int64_t>(ps.size() / rp);
  const auto kq = static_cast<std::int64_t>(qs.size() / rq);
  auto P = ps.first(rp);
  auto Q = qs.first(rq);
  const std::vector<Dart> q_rev = reversed(g, Q);
  if (is_rotation(P, Q) || is_rotation(P, q_rev)) {
    if (kp == kq) throw DomainError("intersection of a class with itself; use self_intersection");
    return 2 * kp * kq * (detail::linked_passages(g, P, P, true, false) / 2);
  }
  return kp * kq * detail::linked_passages(g, P, Q, false, false);
}

std::int64_t intersection(const RibbonGraph& rose, const CyclicWord& p, const CyclicWord& q) {
  return intersection(rose, path_of_word(rose, p), path_of_word(rose, q));
}

std::int64_t brute_min_crossings(const RibbonGraph& g, const std::vector<EdgePath>& paths, std::uint64_t budget) {
  struct Traversal {
    int edge;
    int slot;  // index among the traversals of its edge
  };
  // traversal_of[k][t] describes the t-th step of path k.
  std::vector<std::vector<Traversal>> traversal_of(paths.size());
  std::vector<int> per_edge(static_cast<std::size_t>(g.edge_count()), 0);
  for (std::size_t k = 0; k < paths.size(); ++k) {
    if (paths[k].empty()) throw DomainError("oracle given a trivial path");
    for (Dart d : paths[k].darts()) {
      const int e = g.edge_index(d);
      traversal_of[k].push_back({e, per_edge[static_cast<std::size_t>(e)]++});
    }
  }
  std::uint64_t combos = 1;
  for (int m : per_edge) {
    for (int f = 2; f <= m; ++f) {
      if (combos > budget / static_cast<std::uint64_t>(f)) throw BudgetExceeded("strand orderings exceed budget");
      combos *= static_cast<std::uint64_t>(f);
    }
  }
  int max_m = 1;
  for (int m : per_edge) max_m = std::max(max_m, m);

  // A port is one strand meeting one vertex disk through one dart slot.
  struct Port {
    Dart dart;
    int edge;
    int slot;
  };
  struct Chord {
    int vertex;
    Port in;
    Port out;
  };
  std::vector<Chord> chords;
  for (std::size_t k = 0; k < paths.size(); ++k) {
    const auto& ds = paths[k].darts();
    const std::size_t n = ds.size();
    for (std::size_t t = 0; t < n; ++t) {
      const std::size_t prev = (t + n - 1) % n;
      const Traversal& tin = traversal_of[k][prev];
      const Traversal& tout = traversal_of[k][t];
      chords.push_back({g.vertex(ds[t]), {g.pair(ds[prev]), tin.edge, tin.slot}, {ds[t], tout.edge, tout.slot}});
    }
  }
  std::vector<std::vector<std::size_t>> by_vertex(static_cast<std::size_t>(g.vertex_count()));
  for (std::size_t c = 0; c < chords.size(); ++c) by_vertex[static_cast<std::size_t>(chords[c].vertex)].push_back(c);

  // band[e][slot] = lateral position of that strand, 0 = leftmost looking along the plus dart.
  std::vector<std::vector<int>> band(static_cast<std::size_t>(g.edge_count()));
  for (std::size_t e = 0; e < band.size(); ++e) {
    band[e].resize(static_cast<std::size_t>(per_edge[e]));
    std::iota(band[e].begin(), band[e].end(), 0);
  }

  // Counter-clockwise the plus slot is crossed right to left, the minus slot left to right.
  auto key = [&](const Port& p) {
    const int m = per_edge[static_cast<std::size_t>(p.edge)];
    const int lateral = band[static_cast<std::size_t>(p.edge)][static_cast<std::size_t>(p.slot)];
    const int sub = g.is_plus(p.dart) ? m - 1 - lateral : lateral;
    return g.position(p.dart) * (max_m + 1) + sub;
  };

  auto crossings = [&]() {
    std::int64_t total = 0;
    std::vector<std::pair<int, int>> ends;
    for (const auto& cs : by_vertex) {
      ends.clear();
      for (std::size_t c : cs) {
        int a = key(chords[c].in);
        int b = key(chords[c].out);
        if (a > b) std::swap(a, b);
        ends.emplace_back(a, b);
      }
      for (std::size_t x = 0; x < ends.size(); ++x) {
        for (std::size_t y = x + 1; y < ends.size(); ++y) {
          const bool in1 = ends[x].first < ends[y].first && ends[y].first < ends[x].second;
          const bool in2 = ends[x].first < ends[y].second && ends[y].second < ends[x].second;
          if (in1 != in2) ++total;
        }
      }
    }
    return total;
  };

  std::int64_t best = crossings();
  // Odometer over per-edge permutations.
  while (true) {
    std::size_t e = 0;
    for (; e < band.size(); ++e) {
      if (std::next_permutation(band[e].begin(), band[e].end())) break;
      // next_permutation wrapped this edge back to sorted order; carry.
    }
    if (e == band.size()) break;
    best = std::min(best, crossings());
    if (best == 0) break;
  }
  return best;
}

namespace {

constexpr std::uint64_t kMersenne61 = (1ULL << 61) - 1;

std::uint64_t mulmod61(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 z = static_cast<unsigned __int128>(a) * b;
  std::uint64_t r = static_cast<std::uint64_t>(z & kMersenne61) + static_cast<std::uint64_t>(z >> 61);
  if (r >= kMersenne61) r -= kMersenne61;
  return r;
}

// Walks the Cayley tree of the free group, identifying vertices by
// (depth, polynomial hash of the reduced word).
class TreeWalker {
 public:
  explicit TreeWalker(std::span<const Letter> start) {
    for (Letter l : start) step(l);
  }
  void step(Letter l) {
    if (!stack_.empty() && stack_.back() == inverse(l)) {
      stack_.pop_back();
      hash_.pop_back();
    } else {
      stack_.push_back(l);
      const std::uint64_t h = mulmod61(hash_.back(), kBase) + static_cast<std::uint64_t>(letter_index(l) + 1);
      hash_.push_back(h >= kMersenne61 ? h - kMersenne61 : h);
    }
  }
  std::uint64_t id() const { return hash_.back() + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(stack_.size()); }

 private:
  static constexpr std::uint64_t kBase = 0x1F3A5C7E9B2D4F61ULL % kMersenne61;
  std::vector<Letter> stack_;
  std::vector<std::uint64_t> hash_{0};
};

// Bi-infinite lift of a cyclic word: vertex t is start * gamma^inf[offset, offset + t).
struct TreeLine {
  const CyclicWord* word;
  std::ptrdiff_t offset;
  std::vector<Letter> start;

  Letter letter(std::ptrdiff_t t) const { return word->at(offset + t); }

  // Vertex ids for t in [lo, hi], lo <= 0 <= hi.
  std::vector<std::uint64_t> ids(std::ptrdiff_t lo, std::ptrdiff_t hi) const {
    std::vector<std::uint64_t> out(static_cast<std::size_t>(hi - lo + 1));
    TreeWalker fwd(start);
    out[static_cast<std::size_t>(-lo)] = fwd.id();
    for (std::ptrdiff_t t = 0; t < hi; ++t) {
      fwd.step(letter(t));
      out[static_cast<std::size_t>(t + 1 - lo)] = fwd.id();
    }
    TreeWalker back(start);
    for (std::ptrdiff_t t = 0; t > lo; --t) {
      back.step(inverse(letter(t - 1)));
      out[static_cast<std::size_t>(t - 1 - lo)] = back.id();
    }
    return out;
  }
};

// Whether two lines meeting the window [lo, hi] cross.  Returns false when
// they are disjoint; every intersection is guaranteed to contain a vertex with
// index in [lo, hi] on both lines.
bool lines_cross(const RibbonGraph& rose, const TreeLine& A, const TreeLine& B, std::ptrdiff_t lo,
                 std::ptrdiff_t hi) {
  const std::ptrdiff_t limit = 8 * static_cast<std::ptrdiff_t>(A.word->size() + B.word->size()) + 64;
  for (std::ptrdiff_t pad = 4;; pad *= 2) {
    if (pad > limit) throw std::logic_error("tree lines overlap beyond any period bound");
    const std::ptrdiff_t wlo = std::min<std::ptrdiff_t>(lo - pad, 0);
    const std::ptrdiff_t whi = std::max<std::ptrdiff_t>(hi + pad, 0);
    const auto ia = A.ids(wlo, whi);
    const auto ib = B.ids(wlo, whi);
    std::unordered_map<std::uint64_t, std::ptrdiff_t> where;
    where.reserve(ia.size() * 2);
    for (std::size_t t = 0; t < ia.size(); ++t) where.emplace(ia[t], static_cast<std::ptrdiff_t>(t) + wlo);
    std::ptrdiff_t a_min = 0, a_max = 0, b_at_min = 0, b_at_max = 0, b_min = 0, b_max = 0;
    bool met = false;
    for (std::size_t t = 0; t < ib.size(); ++t) {
      auto it = where.find(ib[t]);
      if (it == where.end()) continue;
      const std::ptrdiff_t ta = it->second;
      const std::ptrdiff_t tb = static_cast<std::ptrdiff_t>(t) + wlo;
      if (!met || ta < a_min) a_min = ta, b_at_min = tb;
      if (!met || ta > a_max) a_max = ta, b_at_max = tb;
      if (!met || tb < b_min) b_min = tb;
      if (!met || tb > b_max) b_max = tb;
      met = true;
    }
    if (!met) return false;
    if (a_min == wlo || a_max == whi || b_min == wlo || b_max == whi) continue;  // widen

    auto fwd = [&](const TreeLine& L, std::ptrdiff_t t) { return rose.dart_of(L.letter(t)); };
    auto back = [&](const TreeLine& L, std::ptrdiff_t t) { return rose.dart_of(inverse(L.letter(t - 1))); };
    if (a_min == a_max)
      return detail::interleaved(rose, back(A, a_min), fwd(A, a_min), back(B, b_at_min), fwd(B, b_at_min));
    const bool parallel = b_at_max > b_at_min;
    const int ex = detail::orientation(rose, fwd(A, a_min), back(A, a_min),
                                       parallel ? back(B, b_at_min) : fwd(B, b_at_min));
    const int ey = detail::orientation(rose, back(A, a_max), fwd(A, a_max),
                                       parallel ? fwd(B, b_at_max) : back(B, b_at_max));
    return ex == ey;
  }
}

}  // namespace

std::int64_t spiraling(const CyclicWord& gamma, const CyclicWord& alpha, const RibbonGraph& rose) {
  if (!rose.is_rose()) throw UsageError("spiraling is implemented on rose spines");
  if (gamma.empty() || alpha.empty()) throw DomainError("spiraling needs nontrivial classes");
  if (self_intersection(rose, alpha) != 0) throw DomainError("spiraling core must be a simple class");
  const CyclicWord root = primitive_root(gamma).root;
  if (root == alpha || root == alpha.inverse()) throw DomainError("gamma is a power of the annulus core");

  const auto n = static_cast<std::ptrdiff_t>(gamma.size());
  const auto a = static_cast<std::ptrdiff_t>(alpha.size());
  auto d = [&](Letter l) { return rose.dart_of(l); };
  std::int64_t best = 0;
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    for (std::ptrdiff_t j = 0; j < a; ++j) {
      // Lift of gamma through the axis vertex alpha^inf[0, j) at passage i.
      const Dart back = d(inverse(gamma.at(i - 1)));
      const Dart fwd = d(gamma.at(i));
      const Dart ax_f = d(alpha.at(j));
      const Dart ax_b = d(inverse(alpha.at(j - 1)));
      if (back == ax_f || back == ax_b) continue;  // contact began earlier along the lift
      std::ptrdiff_t m = 0;
      bool crosses;
      if (fwd == ax_f) {
        m = 1;
        while (gamma.at(i + m) == alpha.at(j + m))
          if (++m > n + a) throw std::logic_error("lift runs along the core forever");
        crosses = detail::orientation(rose, fwd, back, ax_b) ==
                  detail::orientation(rose, d(inverse(gamma.at(i + m - 1))), d(gamma.at(i + m)), d(alpha.at(j + m)));
      } else if (fwd == ax_b) {
        m = 1;
        while (gamma.at(i + m) == inverse(alpha.at(j - 1 - m)))
          if (++m > n + a) throw std::logic_error("lift runs along the core forever");
        crosses = detail::orientation(rose, fwd, back, ax_f) ==
                  detail::orientation(rose, d(inverse(gamma.at(i + m - 1))), d(gamma.at(i + m)),
                                      d(inverse(alpha.at(j - m - 1))));
      } else {
        crosses = detail::interleaved(rose, back, fwd, ax_b, ax_f);
      }
      // Crossing lifts join the two ends; a single-vertex touch cannot wind.
      if (crosses || m == 0) continue;

      auto axis_prefix = [&](std::ptrdiff_t len) {
        std::vector<Letter> w(static_cast<std::size_t>(len));
        for (std::ptrdiff_t t = 0; t < len; ++t) w[static_cast<std::size_t>(t)] = alpha.at(t);
        return w;
      };
      const TreeLine lift{&gamma, i, axis_prefix(j)};
      std::int64_t self = 0;
      for (std::ptrdiff_t k = 1; k * a <= m; ++k) {
        const TreeLine shifted{&gamma, i, axis_prefix(k * a + j)};
        if (lines_cross(rose, lift, shifted, 0, m)) ++self;
      }
      best = std::max(best, self);
    }
  }
  return best;
}

}  // namespace curvelab
