#include "covers.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"
#include "intersect.hpp"

namespace curvelab {

namespace {

constexpr int kMaxDegree = 8;

void check_degree(int d) {
  if (d < 1 || d > kMaxDegree) throw UsageError("cover degree must be in [1, 8]");
}

using Tuple = std::vector<const Perm*>;

bool tuple_transitive(const Tuple& t, int d) {
  std::array<bool, kMaxDegree> seen{};
  std::array<int, kMaxDegree> stack{};
  int top = 0;
  int count = 1;
  seen[0] = true;
  stack[top++] = 0;
  while (top > 0) {
    const int s = stack[--top];
    for (const Perm* p : t) {
      const int x = (*p)[static_cast<std::size_t>(s)];
      if (!seen[static_cast<std::size_t>(x)]) {
        seen[static_cast<std::size_t>(x)] = true;
        stack[top++] = x;
        ++count;
      }
    }
  }
  return count == d;
}

bool tuple_relation(const Tuple& t, int d) {
  // Left-to-right action: [x, y] sends s to y^-1(x^-1(y(x(s)))).
  std::array<int, kMaxDegree> cur{};
  for (int s = 0; s < d; ++s) cur[static_cast<std::size_t>(s)] = s;
  for (std::size_t i = 0; i + 1 < t.size(); i += 2) {
    const Perm& x = *t[i];
    const Perm& y = *t[i + 1];
    std::array<int, kMaxDegree> xi{}, yi{};
    for (int s = 0; s < d; ++s) {
      xi[static_cast<std::size_t>(x[static_cast<std::size_t>(s)])] = s;
      yi[static_cast<std::size_t>(y[static_cast<std::size_t>(s)])] = s;
    }
    for (int s = 0; s < d; ++s) {
      int v = cur[static_cast<std::size_t>(s)];
      v = x[static_cast<std::size_t>(v)];
      v = y[static_cast<std::size_t>(v)];
      v = xi[static_cast<std::size_t>(v)];
      v = yi[static_cast<std::size_t>(v)];
      cur[static_cast<std::size_t>(s)] = v;
    }
  }
  for (int s = 0; s < d; ++s)
    if (cur[static_cast<std::size_t>(s)] != s) return false;
  return true;
}

bool admissible(const Tuple& t, const RepSpace& space) {
  if (!tuple_transitive(t, space.degree)) return false;
  return space.mode == RepMode::free || tuple_relation(t, space.degree);
}

PermRep to_rep(const Tuple& t, int d) {
  std::vector<std::vector<int>> images;
  images.reserve(t.size());
  for (const Perm* p : t) images.push_back(*p);
  return PermRep(d, std::move(images));
}

void check_space(const RepSpace& space) {
  check_degree(space.degree);
  if (space.rank < 1) throw UsageError("rank must be positive");
  if (space.mode == RepMode::closed && space.rank % 2 != 0) throw UsageError("closed mode needs an even rank");
}

// Tuple with the given mixed-radix index.
void decode(std::uint64_t index, const std::vector<Perm>& sd, Tuple& t) {
  const std::uint64_t base = sd.size();
  for (std::size_t g = t.size(); g-- > 0;) {
    t[g] = &sd[static_cast<std::size_t>(index % base)];
    index /= base;
  }
}

using Canonical = std::vector<std::int8_t>;

// Relabel sheets in breadth-first order from each start; keep the least.
Canonical canonical_form(const std::vector<std::vector<int>>& images, int d) {
  Canonical best;
  Canonical cur(images.size() * static_cast<std::size_t>(d));
  std::array<int, kMaxDegree> label{};
  std::array<int, kMaxDegree> order{};
  for (int start = 0; start < d; ++start) {
    label.fill(-1);
    int next = 0;
    label[static_cast<std::size_t>(start)] = next;
    order[static_cast<std::size_t>(next++)] = start;
    for (int head = 0; head < next; ++head) {
      const int v = order[static_cast<std::size_t>(head)];
      for (const auto& p : images) {
        const int w = p[static_cast<std::size_t>(v)];
        if (label[static_cast<std::size_t>(w)] == -1) {
          label[static_cast<std::size_t>(w)] = next;
          order[static_cast<std::size_t>(next++)] = w;
        }
      }
    }
    for (std::size_t g = 0; g < images.size(); ++g)
      for (int v = 0; v < d; ++v)
        cur[g * static_cast<std::size_t>(d) + static_cast<std::size_t>(label[static_cast<std::size_t>(v)])] =
            static_cast<std::int8_t>(label[static_cast<std::size_t>(images[g][static_cast<std::size_t>(v)])]);
    if (best.empty() || cur < best) best = cur;
  }
  return best;
}

std::set<Canonical> canonical_classes(const RepSpace& space) {
  std::set<Canonical> classes;
  for_each_transitive_rep(space, [&](const PermRep& phi) {
    std::vector<std::vector<int>> images;
    for (int g = 0; g < phi.rank(); ++g) images.push_back(phi.image(g));
    classes.insert(canonical_form(images, space.degree));
    return true;
  });
  return classes;
}

}  // namespace

const std::vector<Perm>& symmetric_group(int d) {
  check_degree(d);
  static std::array<std::vector<Perm>, kMaxDegree + 1> cache;
  static std::array<std::once_flag, kMaxDegree + 1> once;
  std::call_once(once[static_cast<std::size_t>(d)], [d] {
    Perm p(static_cast<std::size_t>(d));
    std::iota(p.begin(), p.end(), 0);
    auto& out = cache[static_cast<std::size_t>(d)];
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
  });
  return cache[static_cast<std::size_t>(d)];
}

std::uint64_t for_each_transitive_rep(const RepSpace& space, const std::function<bool(const PermRep&)>& visit) {
  check_space(space);
  const auto& sd = symmetric_group(space.degree);
  std::uint64_t total = 1;
  for (int g = 0; g < space.rank; ++g) {
    if (total > (1ULL << 40) / sd.size()) throw BudgetExceeded("representation space too large to enumerate");
    total *= sd.size();
  }
  Tuple t(static_cast<std::size_t>(space.rank));
  std::uint64_t visited = 0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    decode(idx, sd, t);
    if (!admissible(t, space)) continue;
    ++visited;
    if (!visit(to_rep(t, space.degree))) break;
  }
  return visited;
}

std::uint64_t count_transitive_reps(const RepSpace& space) {
  return for_each_transitive_rep(space, [](const PermRep&) { return true; });
}

const std::vector<PermRep>& transitive_class_representatives(int rank, int degree) {
  check_degree(degree);
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<PermRep>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find({rank, degree});
  if (it != cache.end()) return it->second;
  std::vector<PermRep> reps;
  for (const Canonical& c : canonical_classes({rank, degree, RepMode::free})) {
    std::vector<std::vector<int>> images(static_cast<std::size_t>(rank));
    for (int g = 0; g < rank; ++g)
      for (int v = 0; v < degree; ++v)
        images[static_cast<std::size_t>(g)].push_back(c[static_cast<std::size_t>(g * degree + v)]);
    reps.emplace_back(degree, std::move(images));
  }
  return cache.emplace(std::pair{rank, degree}, std::move(reps)).first->second;
}

std::uint64_t count_transitive_classes(const RepSpace& space) { return canonical_classes(space).size(); }

std::uint64_t count_transitive_classes_burnside(const RepSpace& space) {
  check_space(space);
  const auto& sd = symmetric_group(space.degree);
  const std::size_t d = static_cast<std::size_t>(space.degree);
  std::uint64_t fixed_total = 0;
  for (const Perm& sigma : sd) {
    std::vector<const Perm*> centralizer;
    for (const Perm& p : sd) {
      bool commutes = true;
      for (std::size_t s = 0; s < d && commutes; ++s)
        commutes = p[static_cast<std::size_t>(sigma[s])] == sigma[static_cast<std::size_t>(p[s])];
      if (commutes) centralizer.push_back(&p);
    }
    Tuple t(static_cast<std::size_t>(space.rank));
    std::uint64_t total = 1;
    for (int g = 0; g < space.rank; ++g) total *= centralizer.size();
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::uint64_t rest = idx;
      for (std::size_t g = t.size(); g-- > 0;) {
        t[g] = centralizer[static_cast<std::size_t>(rest % centralizer.size())];
        rest /= centralizer.size();
      }
      if (admissible(t, space)) ++fixed_total;
    }
  }
  if (fixed_total % sd.size() != 0) throw std::logic_error("Burnside average is not an integer");
  return fixed_total / sd.size();
}

BigInt hall_count(int rank, int d) {
  if (rank < 1) throw UsageError("rank must be positive");
  if (d < 1) throw UsageError("index must be positive");
  std::vector<BigInt> fact(static_cast<std::size_t>(d) + 1, 1);
  for (int i = 1; i <= d; ++i) fact[static_cast<std::size_t>(i)] = fact[static_cast<std::size_t>(i) - 1] * i;
  const auto pw = [&](const BigInt& x) { return boost::multiprecision::pow(x, static_cast<unsigned>(rank - 1)); };
  std::vector<BigInt> n(static_cast<std::size_t>(d) + 1, 0);
  for (int m = 1; m <= d; ++m) {
    BigInt v = BigInt(m) * pw(fact[static_cast<std::size_t>(m)]);
    for (int k = 1; k < m; ++k) v -= pw(fact[static_cast<std::size_t>(m - k)]) * n[static_cast<std::size_t>(k)];
    n[static_cast<std::size_t>(m)] = v;
  }
  return n[static_cast<std::size_t>(d)];
}

std::vector<Partition> partitions(int d) {
  if (d < 0) throw UsageError("partitions of a negative integer");
  std::vector<Partition> out;
  Partition cur;
  std::function<void(int, int)> rec = [&](int remaining, int cap) {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (int part = std::min(remaining, cap); part >= 1; --part) {
      cur.push_back(part);
      rec(remaining - part, part);
      cur.pop_back();
    }
  };
  rec(d, d);
  return out;
}

BigInt hook_degree(const Partition& lambda) {
  int d = 0;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (lambda[i] <= 0 || (i > 0 && lambda[i] > lambda[i - 1])) throw UsageError("not a partition");
    d += lambda[i];
  }
  BigInt num = 1;
  for (int i = 2; i <= d; ++i) num *= i;
  BigInt hooks = 1;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    for (int j = 0; j < lambda[i]; ++j) {
      int below = 0;
      for (std::size_t k = i + 1; k < lambda.size() && lambda[k] > j; ++k) ++below;
      hooks *= lambda[i] - j - 1 + below + 1;
    }
  }
  if (num % hooks != 0) throw std::logic_error("hook product does not divide d!");
  return num / hooks;
}

BigInt mednykh_count(int genus, int d) {
  using Rational = boost::multiprecision::cpp_rational;
  if (genus < 1) throw UsageError("genus must be positive");
  if (d < 1) throw UsageError("index must be positive");
  std::vector<BigInt> fact(static_cast<std::size_t>(d) + 1, 1);
  for (int i = 1; i <= d; ++i) fact[static_cast<std::size_t>(i)] = fact[static_cast<std::size_t>(i) - 1] * i;
  auto as_integer = [](const Rational& q) {
    if (boost::multiprecision::denominator(q) != 1) throw std::logic_error("non-integral intermediate");
    return BigInt(boost::multiprecision::numerator(q));
  };
  std::vector<BigInt> h(static_cast<std::size_t>(d) + 1, 0);
  for (int m = 1; m <= d; ++m) {
    Rational sum = 0;
    for (const Partition& lambda : partitions(m)) {
      const BigInt f = hook_degree(lambda);
      sum += Rational(1, boost::multiprecision::pow(f, static_cast<unsigned>(2 * genus - 2)));
    }
    h[static_cast<std::size_t>(m)] =
        as_integer(sum * Rational(boost::multiprecision::pow(fact[static_cast<std::size_t>(m)],
                                                             static_cast<unsigned>(2 * genus - 1))));
  }
  std::vector<BigInt> n(static_cast<std::size_t>(d) + 1, 0);
  for (int m = 1; m <= d; ++m) {
    Rational v(h[static_cast<std::size_t>(m)], fact[static_cast<std::size_t>(m - 1)]);
    for (int k = 1; k < m; ++k)
      v -= Rational(h[static_cast<std::size_t>(m - k)] * n[static_cast<std::size_t>(k)],
                    fact[static_cast<std::size_t>(m - k)]);
    n[static_cast<std::size_t>(m)] = as_integer(v);
  }
  return n[static_cast<std::size_t>(d)];
}

bool has_simple_elevation(const CyclicWord& gamma, const RibbonGraph& rose, const PermRep& phi, int* start_sheet,
                          int* winding) {
  if (gamma.empty()) throw DomainError("simple lifting degree of the trivial class");
  const int d = phi.degree();
  std::array<int, kMaxDegree> perm{};
  for (int s = 0; s < d; ++s) {
    int t = s;
    for (Letter l : gamma.word()) t = phi.apply(l, t);
    perm[static_cast<std::size_t>(s)] = t;
  }
  const ImplicitCover view(rose, phi);
  std::array<bool, kMaxDegree> seen{};
  std::vector<Dart> darts;
  for (int s0 = 0; s0 < d; ++s0) {
    if (seen[static_cast<std::size_t>(s0)]) continue;
    int k = 0;
    for (int s = s0; !seen[static_cast<std::size_t>(s)]; s = perm[static_cast<std::size_t>(s)]) {
      seen[static_cast<std::size_t>(s)] = true;
      ++k;
    }
    darts.clear();
    int sheet = s0;
    for (int rep = 0; rep < k; ++rep) {
      for (Letter l : gamma.word()) {
        darts.push_back(view.lift(rose.dart_of(l), sheet));
        sheet = phi.apply(l, sheet);
      }
    }
    if (is_simple_path(view, std::span<const Dart>(darts))) {
      if (start_sheet) *start_sheet = s0;
      if (winding) *winding = k;
      return true;
    }
  }
  return false;
}

namespace {

struct Hit {
  std::uint64_t index;
  int start_sheet;
  int winding;
};

// First index in [0, total) accepted by `probe`, scanned in parallel blocks.
template <class Probe>
std::optional<Hit> first_hit(std::uint64_t total, int jobs, const Probe& probe) {
  constexpr std::uint64_t kBlock = 2048;
  const std::uint64_t blocks = (total + kBlock - 1) / kBlock;
  std::atomic<std::uint64_t> next_block{0};
  std::atomic<std::uint64_t> best{UINT64_MAX};
  std::mutex mu;
  std::optional<Hit> winner;
  auto worker = [&] {
    while (true) {
      const std::uint64_t b = next_block.fetch_add(1);
      if (b >= blocks) return;
      const std::uint64_t lo = b * kBlock;
      if (lo > best.load()) return;  // blocks are claimed in order
      const std::uint64_t hi = std::min(total, lo + kBlock);
      for (std::uint64_t i = lo; i < hi && i < best.load(); ++i) {
        if (auto h = probe(i)) {
          std::lock_guard lock(mu);
          if (!winner || h->index < winner->index) {
            winner = *h;
            best.store(h->index);
          }
          break;
        }
      }
    }
  };
  const int n = std::max(1, jobs);
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return winner;
}

}  // namespace

DegreeSearchResult simple_lifting_degree(const CyclicWord& gamma, const RibbonGraph& rose,
                                         const DegreeSearchOptions& options) {
  if (!rose.is_rose()) throw UsageError("degree search runs on rose spines");
  if (gamma.empty()) throw DomainError("simple lifting degree of the trivial class");
  if (options.d_max < 1 || options.d_max > kMaxDegree) throw UsageError("d_max must be in [1, 8]");
  for (Letter l : gamma.word())
    if (generator_of(l) >= rose.rank()) throw UsageError("word uses a letter outside the surface alphabet");
  const int r = rose.rank();
  DegreeSearchResult result;
  result.d_max = options.d_max;
  for (int d = 1; d <= options.d_max; ++d) {
    std::optional<Hit> hit;
    std::optional<PermRep> witness;
    if (options.class_representatives) {
      const auto& reps = transitive_class_representatives(r, d);
      hit = first_hit(reps.size(), options.jobs, [&](std::uint64_t i) -> std::optional<Hit> {
        Hit h{i, 0, 0};
        if (has_simple_elevation(gamma, rose, reps[static_cast<std::size_t>(i)], &h.start_sheet, &h.winding))
          return h;
        return std::nullopt;
      });
      if (hit) witness = reps[static_cast<std::size_t>(hit->index)];
    } else {
      const auto& sd = symmetric_group(d);
      const RepSpace space{r, d, RepMode::free};
      std::uint64_t total = 1;
      for (int g = 0; g < r; ++g) {
        if (total > (1ULL << 40) / sd.size()) throw BudgetExceeded("representation space too large to search");
        total *= sd.size();
      }
      hit = first_hit(total, options.jobs, [&](std::uint64_t i) -> std::optional<Hit> {
        Tuple t(static_cast<std::size_t>(r));
        decode(i, sd, t);
        if (!admissible(t, space)) return std::nullopt;
        Hit h{i, 0, 0};
        if (has_simple_elevation(gamma, rose, to_rep(t, d), &h.start_sheet, &h.winding)) return h;
        return std::nullopt;
      });
      if (hit) {
        Tuple t(static_cast<std::size_t>(r));
        decode(hit->index, sd, t);
        witness = to_rep(t, d);
      }
    }
    if (hit) {
      result.found = true;
      result.degree = d;
      result.witness = std::move(witness);
      result.elevation_start_sheet = hit->start_sheet;
      result.elevation_winding = hit->winding;
      return result;
    }
  }
  return result;
}

}  // namespace curvelab
