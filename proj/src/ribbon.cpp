#include "ribbon.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "errors.hpp"

namespace curvelab {

RibbonGraph::RibbonGraph(std::vector<std::vector<Dart>> vertices, std::vector<EdgeInfo> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  const std::size_t n = 2 * edges_.size();
  pair_.assign(n, -1);
  next_.assign(n, -1);
  vertex_of_.assign(n, -1);
  position_.assign(n, -1);
  edge_index_.assign(n, -1);
  auto in_range = [n](Dart d) { return d >= 0 && static_cast<std::size_t>(d) < n; };
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const EdgeInfo& info = edges_[e];
    if (!in_range(info.plus) || !in_range(info.minus) || info.plus == info.minus)
      throw UsageError("edge darts out of range or equal");
    if (pair_[static_cast<std::size_t>(info.plus)] != -1 || pair_[static_cast<std::size_t>(info.minus)] != -1)
      throw UsageError("dart used by two edges");
    pair_[static_cast<std::size_t>(info.plus)] = info.minus;
    pair_[static_cast<std::size_t>(info.minus)] = info.plus;
    edge_index_[static_cast<std::size_t>(info.plus)] = static_cast<int>(e);
    edge_index_[static_cast<std::size_t>(info.minus)] = static_cast<int>(e);
  }
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    const auto& ds = vertices_[v];
    if (ds.empty()) throw UsageError("empty vertex");
    for (std::size_t i = 0; i < ds.size(); ++i) {
      const Dart d = ds[i];
      if (!in_range(d)) throw UsageError("vertex dart out of range");
      if (vertex_of_[static_cast<std::size_t>(d)] != -1) throw UsageError("dart listed at two vertices");
      vertex_of_[static_cast<std::size_t>(d)] = static_cast<int>(v);
      position_[static_cast<std::size_t>(d)] = static_cast<int>(i);
      next_[static_cast<std::size_t>(d)] = ds[(i + 1) % ds.size()];
    }
  }
  for (std::size_t d = 0; d < n; ++d)
    if (vertex_of_[d] == -1) throw UsageError("dart missing from every vertex");

  // Rose detection.
  if (vertices_.size() == 1) {
    const int r = static_cast<int>(edges_.size());
    std::vector<Dart> by_letter(static_cast<std::size_t>(2 * r), -1);
    bool ok = r >= 1 && r <= 26;
    for (const EdgeInfo& e : edges_) {
      if (!ok) break;
      const int g = generator_of(e.label);
      if (e.label <= 0 || g >= r || by_letter[static_cast<std::size_t>(2 * g)] != -1) {
        ok = false;
        break;
      }
      by_letter[static_cast<std::size_t>(letter_index(e.label))] = e.plus;
      by_letter[static_cast<std::size_t>(letter_index(inverse(e.label)))] = e.minus;
    }
    if (ok) {
      rose_rank_ = r;
      letter_dart_ = std::move(by_letter);
    }
  }
}

RibbonGraph RibbonGraph::rose(const std::vector<Letter>& order) {
  const int r = static_cast<int>(order.size()) / 2;
  if (r < 1 || static_cast<int>(order.size()) != 2 * r) throw UsageError("rose order must list 2r letters");
  std::vector<bool> seen(order.size(), false);
  std::vector<Dart> darts;
  for (Letter l : order) {
    if (l == 0 || generator_of(l) >= r) throw UsageError("rose order uses a letter outside its rank");
    const auto idx = static_cast<std::size_t>(letter_index(l));
    if (seen[idx]) throw UsageError("rose order repeats a letter");
    seen[idx] = true;
    darts.push_back(static_cast<Dart>(idx));
  }
  std::vector<EdgeInfo> edges;
  for (int g = 0; g < r; ++g) edges.push_back({2 * g, 2 * g + 1, static_cast<Letter>(g + 1), -1});
  return RibbonGraph({darts}, edges);
}

RibbonGraph RibbonGraph::rose(std::string_view order) { return rose(Word::parse(order).letters()); }

RibbonGraph RibbonGraph::preset(std::string_view name) {
  if (name == "punctured-torus") return rose("abAB");
  if (name == "pair-of-pants") return rose("aAbB");
  if (name == "genus2-boundary1") return rose("abABcdCD");
  if (name.starts_with("rose:")) return rose(name.substr(5));
  throw UsageError("unknown surface preset '" + std::string(name) + "'");
}

RibbonGraph RibbonGraph::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::vector<Dart>> vertices;
  std::vector<EdgeInfo> edges;
  bool header = false;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;
    if (kind == "ribbon-graph") {
      header = true;
    } else if (kind == "vertex") {
      std::vector<Dart> ds;
      Dart d;
      while (ls >> d) ds.push_back(d);
      if (!ls.eof()) throw UsageError("bad vertex line: " + line);
      vertices.push_back(std::move(ds));
    } else if (kind == "edge") {
      EdgeInfo e;
      std::string label;
      if (!(ls >> e.plus >> e.minus >> label) || label.size() != 1) throw UsageError("bad edge line: " + line);
      e.label = parse_letter(label[0]);
      if (e.label < 0) throw UsageError("edge labels must be generators: " + line);
      if (!(ls >> e.sheet)) e.sheet = -1;
      edges.push_back(e);
    } else {
      throw UsageError("unknown ribbon-graph line: " + line);
    }
  }
  if (!header) throw UsageError("missing 'ribbon-graph' header");
  return RibbonGraph(std::move(vertices), std::move(edges));
}

std::string RibbonGraph::serialize() const {
  std::ostringstream out;
  out << "ribbon-graph\n";
  for (const auto& ds : vertices_) {
    out << "vertex";
    for (Dart d : ds) out << ' ' << d;
    out << '\n';
  }
  for (const EdgeInfo& e : edges_) {
    out << "edge " << e.plus << ' ' << e.minus << ' ' << letter_char(e.label);
    if (e.sheet >= 0) out << ' ' << e.sheet;
    out << '\n';
  }
  return out.str();
}

Letter RibbonGraph::letter_of(Dart d) const {
  const EdgeInfo& e = edge_of(d);
  return e.plus == d ? e.label : inverse(e.label);
}

Dart RibbonGraph::dart_of(Letter l) const {
  if (!is_rose()) throw UsageError("words spell paths only on rose spines");
  if (l == 0 || generator_of(l) >= rose_rank_) throw UsageError("letter outside the rose's alphabet");
  return letter_dart_[static_cast<std::size_t>(letter_index(l))];
}

std::vector<std::vector<Dart>> RibbonGraph::faces() const {
  std::vector<std::vector<Dart>> out;
  std::vector<bool> seen(pair_.size(), false);
  for (std::size_t d0 = 0; d0 < pair_.size(); ++d0) {
    if (seen[d0]) continue;
    std::vector<Dart> face;
    Dart d = static_cast<Dart>(d0);
    while (!seen[static_cast<std::size_t>(d)]) {
      seen[static_cast<std::size_t>(d)] = true;
      face.push_back(d);
      d = next(pair(d));
    }
    out.push_back(std::move(face));
  }
  return out;
}

int RibbonGraph::component_count() const {
  std::vector<int> parent(vertices_.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  };
  int count = vertex_count();
  for (const EdgeInfo& e : edges_) {
    const int a = find(vertex(e.plus));
    const int b = find(vertex(e.minus));
    if (a != b) {
      parent[static_cast<std::size_t>(a)] = b;
      --count;
    }
  }
  return count;
}

SurfaceSignature signature(const RibbonGraph& g) {
  if (g.component_count() != 1) throw DomainError("signature needs a connected ribbon graph");
  SurfaceSignature s;
  s.euler_characteristic = g.vertex_count() - g.edge_count();
  s.boundary_count = static_cast<int>(g.faces().size());
  s.genus = (2 - s.euler_characteristic - s.boundary_count) / 2;
  return s;
}

PermRep::PermRep(int degree, std::vector<std::vector<int>> images) : degree_(degree), images_(std::move(images)) {
  if (degree < 1) throw UsageError("cover degree must be positive");
  inverses_.reserve(images_.size());
  for (const auto& p : images_) {
    if (static_cast<int>(p.size()) != degree) throw UsageError("permutation has wrong degree");
    std::vector<int> inv(static_cast<std::size_t>(degree), -1);
    for (int s = 0; s < degree; ++s) {
      const int t = p[static_cast<std::size_t>(s)];
      if (t < 0 || t >= degree || inv[static_cast<std::size_t>(t)] != -1) throw UsageError("not a permutation");
      inv[static_cast<std::size_t>(t)] = s;
    }
    inverses_.push_back(std::move(inv));
  }
  std::vector<int> comp(static_cast<std::size_t>(degree), -1);
  for (int s0 = 0; s0 < degree; ++s0) {
    if (comp[static_cast<std::size_t>(s0)] != -1) continue;
    std::vector<int> stack{s0};
    comp[static_cast<std::size_t>(s0)] = orbits_;
    while (!stack.empty()) {
      const int s = stack.back();
      stack.pop_back();
      // Forward images suffice: orbits of a finite permutation group are closed under inverses.
      for (const auto& p : images_) {
        const int t = p[static_cast<std::size_t>(s)];
        if (comp[static_cast<std::size_t>(t)] == -1) {
          comp[static_cast<std::size_t>(t)] = orbits_;
          stack.push_back(t);
        }
      }
    }
    ++orbits_;
  }
  transitive_ = orbits_ == 1;
}

PermRep PermRep::trivial(int rank) { return PermRep(1, std::vector<std::vector<int>>(static_cast<std::size_t>(rank), {0})); }

std::vector<int> PermRep::evaluate(const Word& w) const {
  std::vector<int> out(static_cast<std::size_t>(degree_));
  for (int s = 0; s < degree_; ++s) {
    int t = s;
    for (Letter l : w) t = apply(l, t);
    out[static_cast<std::size_t>(s)] = t;
  }
  return out;
}

bool PermRep::satisfies_surface_relation() const {
  if (rank() % 2 != 0) return false;
  Word relator;
  for (int i = 0; i < rank(); i += 2) {
    const auto x = static_cast<Letter>(i + 1);
    const auto y = static_cast<Letter>(i + 2);
    relator = relator * Word({x, y, inverse(x), inverse(y)});
  }
  const std::vector<int> p = evaluate(relator);
  for (int s = 0; s < degree_; ++s)
    if (p[static_cast<std::size_t>(s)] != s) return false;
  return true;
}

std::string cycles_to_string(const std::vector<int>& perm) {
  std::string out;
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t s0 = 0; s0 < perm.size(); ++s0) {
    if (seen[s0]) continue;
    out += '(';
    std::size_t s = s0;
    bool first = true;
    while (!seen[s]) {
      seen[s] = true;
      if (!first) out += ' ';
      out += std::to_string(s + 1);
      first = false;
      s = static_cast<std::size_t>(perm[s]);
    }
    out += ')';
  }
  return out;
}

std::string PermRep::cycle_notation() const {
  std::string out;
  for (int g = 0; g < rank(); ++g) {
    if (g > 0) out += ';';
    out += letter_char(static_cast<Letter>(g + 1));
    out += '=';
    out += cycles_to_string(images_[static_cast<std::size_t>(g)]);
  }
  return out;
}

EdgePath::EdgePath(const RibbonGraph& g, std::vector<Dart> darts) : darts_(std::move(darts)) {
  const std::size_t n = darts_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Dart d = darts_[i];
    if (d < 0 || d >= g.dart_count()) throw UsageError("path dart out of range");
    const Dart nxt = darts_[(i + 1) % n];
    if (g.vertex(g.pair(d)) != g.vertex(nxt)) throw UsageError("path darts are not head-to-tail");
    if (nxt == g.pair(d)) throw UsageError("path backtracks");
  }
}

EdgePath path_of_word(const RibbonGraph& rose, const CyclicWord& c) {
  std::vector<Dart> darts;
  darts.reserve(c.size());
  for (Letter l : c.word()) darts.push_back(rose.dart_of(l));
  return EdgePath(rose, std::move(darts));
}

Word spell(const RibbonGraph& g, const EdgePath& p) {
  std::vector<Letter> letters;
  letters.reserve(p.size());
  for (Dart d : p.darts()) letters.push_back(g.letter_of(d));
  return Word(std::move(letters));
}

Cover cover(const RibbonGraph& base, const PermRep& phi) {
  const int deg = phi.degree();
  Cover out{RibbonGraph({{0, 1}}, {{0, 1, 1, -1}}), deg};
  std::vector<std::vector<Dart>> vertices;
  vertices.reserve(static_cast<std::size_t>(base.vertex_count() * deg));
  for (int v = 0; v < base.vertex_count(); ++v) {
    for (int s = 0; s < deg; ++s) {
      std::vector<Dart> ds;
      for (Dart d : base.darts_at(v)) ds.push_back(out.lift(d, s));
      vertices.push_back(std::move(ds));
    }
  }
  std::vector<EdgeInfo> edges;
  edges.reserve(static_cast<std::size_t>(base.edge_count() * deg));
  for (const EdgeInfo& e : base.edges()) {
    if (generator_of(e.label) >= phi.rank()) throw UsageError("permutation representation misses an edge label");
    for (int s = 0; s < deg; ++s)
      edges.push_back({out.lift(e.plus, s), out.lift(e.minus, phi.apply(e.label, s)), e.label, s});
  }
  out.graph = RibbonGraph(std::move(vertices), std::move(edges));
  return out;
}

std::vector<Elevation> elevations(const CyclicWord& gamma, const PermRep& phi, const RibbonGraph& base,
                                  const Cover& lifted) {
  std::vector<Elevation> out;
  if (gamma.empty()) return out;
  const std::vector<int> perm = phi.evaluate(gamma.word());
  std::vector<bool> seen(perm.size(), false);
  for (int s0 = 0; s0 < phi.degree(); ++s0) {
    if (seen[static_cast<std::size_t>(s0)]) continue;
    int k = 0;
    for (int s = s0; !seen[static_cast<std::size_t>(s)]; s = perm[static_cast<std::size_t>(s)]) {
      seen[static_cast<std::size_t>(s)] = true;
      ++k;
    }
    std::vector<Dart> darts;
    darts.reserve(gamma.size() * static_cast<std::size_t>(k));
    int sheet = s0;
    for (int rep = 0; rep < k; ++rep) {
      for (Letter l : gamma.word()) {
        darts.push_back(lifted.lift(base.dart_of(l), sheet));
        sheet = phi.apply(l, sheet);
      }
    }
    out.push_back({s0, k, EdgePath(lifted.graph, std::move(darts))});
  }
  return out;
}

std::vector<Elevation> elevations(const CyclicWord& gamma, const PermRep& phi, const RibbonGraph& base) {
  return elevations(gamma, phi, base, cover(base, phi));
}

}  // namespace curvelab
