#include "words.hpp"

#include <algorithm>
#include <unordered_set>

#include "errors.hpp"

namespace curvelab {

char letter_char(Letter l) {
  const int g = generator_of(l);
  return static_cast<char>(l > 0 ? 'a' + g : 'A' + g);
}

Letter parse_letter(char c) {
  if (c >= 'a' && c <= 'z') return static_cast<Letter>(c - 'a' + 1);
  if (c >= 'A' && c <= 'Z') return static_cast<Letter>(-(c - 'A' + 1));
  throw UsageError(std::string("invalid letter '") + c + "'");
}

Alphabet::Alphabet(int rank) : rank_(rank) {
  if (rank < 1 || rank > 26) throw UsageError("alphabet rank must be in [1, 26]");
}

std::vector<Letter> Alphabet::letters() const {
  std::vector<Letter> out;
  out.reserve(static_cast<std::size_t>(size()));
  for (int i = 0; i < size(); ++i) out.push_back(letter_from_index(i));
  return out;
}

Word::Word(std::vector<Letter> letters) : letters_(std::move(letters)) {
  for (Letter l : letters_)
    if (l == 0 || l > 26 || l < -26) throw UsageError("letter out of range");
}

Word Word::parse(std::string_view text) {
  std::vector<Letter> letters;
  letters.reserve(text.size());
  for (char c : text) letters.push_back(parse_letter(c));
  return Word(std::move(letters));
}

std::string Word::str() const {
  std::string s;
  s.reserve(letters_.size());
  for (Letter l : letters_) s.push_back(letter_char(l));
  return s;
}

Word Word::inverse() const {
  std::vector<Letter> out(letters_.rbegin(), letters_.rend());
  for (Letter& l : out) l = curvelab::inverse(l);
  Word w;
  w.letters_ = std::move(out);
  return w;
}

bool Word::is_reduced() const noexcept {
  for (std::size_t i = 1; i < letters_.size(); ++i)
    if (letters_[i] == curvelab::inverse(letters_[i - 1])) return false;
  return true;
}

int Word::rank_used() const noexcept {
  int r = 0;
  for (Letter l : letters_) r = std::max(r, generator_of(l) + 1);
  return r;
}

Word operator*(const Word& u, const Word& v) {
  Word w;
  w.letters_.reserve(u.size() + v.size());
  w.letters_.insert(w.letters_.end(), u.begin(), u.end());
  w.letters_.insert(w.letters_.end(), v.begin(), v.end());
  return w;
}

std::strong_ordering operator<=>(const Word& u, const Word& v) {
  const std::size_t n = std::min(u.size(), v.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = letter_index(u[i]) <=> letter_index(v[i]); c != 0) return c;
  }
  return u.size() <=> v.size();
}

Letter CyclicWord::at(std::ptrdiff_t i) const {
  const auto n = static_cast<std::ptrdiff_t>(word_.size());
  return word_[static_cast<std::size_t>(((i % n) + n) % n)];
}

CyclicWord CyclicWord::inverse() const { return cyclic_reduce(word_.inverse()); }

Word reduce(const Word& w) {
  std::vector<Letter> stack;
  stack.reserve(w.size());
  for (Letter l : w) {
    if (!stack.empty() && stack.back() == inverse(l))
      stack.pop_back();
    else
      stack.push_back(l);
  }
  return Word(std::move(stack));
}

Word least_rotation(const Word& w) {
  const auto n = static_cast<std::ptrdiff_t>(w.size());
  if (n < 2) return w;
  // Booth's algorithm over the doubled sequence.
  std::vector<int> s(static_cast<std::size_t>(2 * n));
  for (std::ptrdiff_t i = 0; i < 2 * n; ++i) s[static_cast<std::size_t>(i)] = letter_index(w[static_cast<std::size_t>(i % n)]);
  auto at = [&](std::ptrdiff_t i) { return s[static_cast<std::size_t>(i)]; };
  std::vector<std::ptrdiff_t> f(static_cast<std::size_t>(2 * n), -1);
  std::ptrdiff_t k = 0;
  for (std::ptrdiff_t j = 1; j < 2 * n; ++j) {
    std::ptrdiff_t i = f[static_cast<std::size_t>(j - k - 1)];
    while (i != -1 && at(j) != at(k + i + 1)) {
      if (at(j) < at(k + i + 1)) k = j - i - 1;
      i = f[static_cast<std::size_t>(i)];
    }
    if (at(j) != at(k + i + 1)) {
      if (at(j) < at(k)) k = j;
      f[static_cast<std::size_t>(j - k)] = -1;
    } else {
      f[static_cast<std::size_t>(j - k)] = i + 1;
    }
  }
  std::vector<Letter> out(static_cast<std::size_t>(n));
  for (std::ptrdiff_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>((k + i) % n)];
  return Word(std::move(out));
}

CyclicWord cyclic_reduce(const Word& w) {
  Word r = reduce(w);
  std::size_t lo = 0;
  std::size_t hi = r.size();
  while (hi - lo >= 2 && r[lo] == inverse(r[hi - 1])) {
    ++lo;
    --hi;
  }
  std::vector<Letter> core(r.begin() + static_cast<std::ptrdiff_t>(lo),
                           r.begin() + static_cast<std::ptrdiff_t>(hi));
  return CyclicWord(least_rotation(Word(std::move(core))));
}

bool are_conjugate(const Word& u, const Word& v) { return cyclic_reduce(u) == cyclic_reduce(v); }

CyclicWord unoriented(const CyclicWord& c) {
  CyclicWord inv = c.inverse();
  return inv < c ? inv : c;
}

PrimitiveRoot primitive_root(const CyclicWord& c) {
  const std::size_t n = c.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) periodic = c[i] == c[i - p];
    if (periodic) {
      std::vector<Letter> root(c.word().begin(), c.word().begin() + static_cast<std::ptrdiff_t>(p));
      return {cyclic_reduce(Word(std::move(root))), static_cast<int>(n / p)};
    }
  }
  return {c, 1};
}

BigInt sphere_size(int rank, int radius) {
  if (rank < 1) throw UsageError("rank must be positive");
  if (radius < 0) throw UsageError("radius must be non-negative");
  if (radius == 0) return 1;
  BigInt q = 2 * rank - 1;
  return BigInt(2 * rank) * boost::multiprecision::pow(q, static_cast<unsigned>(radius - 1));
}

BigInt ball_size(const BallSpec& spec) {
  BigInt total = 0;
  for (int k = 0; k <= spec.radius; ++k) total += sphere_size(spec.rank, k);
  return total;
}

LetterCounts letter_counts(const CyclicWord& c, const Alphabet& alphabet) {
  LetterCounts out;
  out.per_letter.assign(static_cast<std::size_t>(alphabet.size()), 0);
  out.exponent_sum.assign(static_cast<std::size_t>(alphabet.rank()), 0);
  for (Letter l : c.word()) {
    if (!alphabet.contains(l)) throw UsageError("letter outside alphabet");
    ++out.per_letter[static_cast<std::size_t>(letter_index(l))];
    out.exponent_sum[static_cast<std::size_t>(generator_of(l))] += l > 0 ? 1 : -1;
  }
  return out;
}

bool satisfies_no_cancellation(const Word& w, const Word& c) {
  const std::size_t p = c.size();
  for (std::size_t k = 1; k <= w.size(); ++k) {
    // Tail subword of w of length k.
    const std::size_t off = w.size() - k;
    if (k <= p) {
      // Inverse of the initial subword s_1..s_k is s_k^{-1} .. s_1^{-1}.
      bool eq_inv_initial = true;
      for (std::size_t t = 0; t < k && eq_inv_initial; ++t)
        eq_inv_initial = w[off + t] == inverse(c[k - 1 - t]);
      if (eq_inv_initial) return false;
      bool eq_tail = true;
      for (std::size_t t = 0; t < k && eq_tail; ++t) eq_tail = w[off + t] == c[p - k + t];
      if (eq_tail) return false;
    }
  }
  return true;
}

namespace {

std::string encode(const Word& w) {
  std::string s;
  s.reserve(w.size());
  for (Letter l : w) s.push_back(static_cast<char>(letter_index(l)));
  return s;
}

}  // namespace

std::uint64_t conjugates_in_ball(const CyclicWord& c, int n, const Alphabet& alphabet) {
  if (c.empty()) throw DomainError("conjugates_in_ball needs a nontrivial class");
  if (n < static_cast<int>(c.size())) return 0;
  std::unordered_set<std::string> seen;
  std::vector<Word> frontier;
  const auto len = static_cast<std::ptrdiff_t>(c.size());
  for (std::ptrdiff_t r = 0; r < len; ++r) {
    std::vector<Letter> rot(static_cast<std::size_t>(len));
    for (std::ptrdiff_t i = 0; i < len; ++i) rot[static_cast<std::size_t>(i)] = c.at(r + i);
    Word w(std::move(rot));
    if (seen.insert(encode(w)).second) frontier.push_back(std::move(w));
  }
  const std::vector<Letter> letters = alphabet.letters();
  while (!frontier.empty()) {
    std::vector<Word> next;
    for (const Word& g : frontier) {
      for (Letter x : letters) {
        Word h = reduce(Word({x}) * g * Word({inverse(x)}));
        if (static_cast<int>(h.size()) > n) continue;
        if (seen.insert(encode(h)).second) next.push_back(std::move(h));
      }
    }
    frontier = std::move(next);
  }
  return seen.size();
}

std::vector<Word> reduced_words_of_length(int rank, int length) {
  Alphabet alphabet(rank);
  std::vector<Word> out;
  if (length == 0) {
    out.emplace_back();
    return out;
  }
  const int m = alphabet.size();
  std::vector<int> idx(static_cast<std::size_t>(length), 0);
  std::vector<Letter> cur(static_cast<std::size_t>(length));
  // Depth-first enumeration in lexicographic order.
  std::size_t depth = 0;
  idx[0] = -1;
  while (true) {
    ++idx[depth];
    if (idx[depth] >= m) {
      if (depth == 0) break;
      --depth;
      continue;
    }
    const Letter l = letter_from_index(idx[depth]);
    if (depth > 0 && l == inverse(cur[depth - 1])) continue;
    cur[depth] = l;
    if (depth + 1 == static_cast<std::size_t>(length)) {
      out.emplace_back(cur);
    } else {
      ++depth;
      idx[depth] = -1;
    }
  }
  return out;
}

std::vector<CyclicWord> cyclic_words_of_length(int rank, int length) {
  std::vector<CyclicWord> out;
  if (length <= 0) return out;
  for (const Word& w : reduced_words_of_length(rank, length)) {
    if (w[0] == inverse(w.back())) continue;
    CyclicWord c = cyclic_reduce(w);
    if (c.word() == w) out.push_back(std::move(c));
  }
  return out;
}

}  // namespace curvelab
