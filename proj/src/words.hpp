#pragma once

// Free-group words over a symmetric alphabet, cyclic words (conjugacy
// classes), and ball/sphere combinatorics in the Cayley tree.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace curvelab {

using BigInt = boost::multiprecision::cpp_int;

// Generator g_i is +i, its inverse is -i.  Zero is never a letter.
using Letter = std::int16_t;

constexpr Letter inverse(Letter l) noexcept { return static_cast<Letter>(-l); }

// Dense index in [0, 2r): a=0, A=1, b=2, B=3, ...  This is also the fixed
// total order used for canonical rotations.
constexpr int letter_index(Letter l) noexcept { return l > 0 ? 2 * (l - 1) : 2 * (-l - 1) + 1; }

constexpr Letter letter_from_index(int idx) noexcept {
  return static_cast<Letter>(idx % 2 == 0 ? idx / 2 + 1 : -(idx / 2 + 1));
}

constexpr int generator_of(Letter l) noexcept { return (l > 0 ? l : -l) - 1; }

char letter_char(Letter l);
Letter parse_letter(char c);

class Alphabet {
 public:
  explicit Alphabet(int rank);

  int rank() const noexcept { return rank_; }
  int size() const noexcept { return 2 * rank_; }
  bool contains(Letter l) const noexcept { return l != 0 && generator_of(l) < rank_; }
  std::vector<Letter> letters() const;

 private:
  int rank_;
};

class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);

  // ASCII form: a..z are generators, A..Z their inverses.
  static Word parse(std::string_view text);
  std::string str() const;

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter back() const { return letters_.back(); }
  auto begin() const noexcept { return letters_.begin(); }
  auto end() const noexcept { return letters_.end(); }
  const std::vector<Letter>& letters() const noexcept { return letters_; }

  Word inverse() const;
  bool is_reduced() const noexcept;
  // Highest generator index used plus one (0 for the empty word).
  int rank_used() const noexcept;

  // Concatenation without reduction.
  friend Word operator*(const Word& u, const Word& v);
  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& u, const Word& v);

 private:
  std::vector<Letter> letters_;
};

// A conjugacy class, stored as its cyclically reduced least rotation.
class CyclicWord {
 public:
  CyclicWord() = default;

  const Word& word() const noexcept { return word_; }
  std::string str() const { return word_.str(); }
  std::size_t size() const noexcept { return word_.size(); }
  bool empty() const noexcept { return word_.empty(); }
  Letter operator[](std::size_t i) const { return word_[i]; }
  // Index taken modulo the length.
  Letter at(std::ptrdiff_t i) const;

  CyclicWord inverse() const;

  friend bool operator==(const CyclicWord&, const CyclicWord&) = default;
  friend std::strong_ordering operator<=>(const CyclicWord& u, const CyclicWord& v) {
    return u.word_ <=> v.word_;
  }

 private:
  friend CyclicWord cyclic_reduce(const Word& w);
  explicit CyclicWord(Word canonical) : word_(std::move(canonical)) {}
  Word word_;
};

Word reduce(const Word& w);
CyclicWord cyclic_reduce(const Word& w);
inline CyclicWord cyclic_reduce(std::string_view text) { return cyclic_reduce(Word::parse(text)); }

// Least rotation under letter_index order (Booth's algorithm).
Word least_rotation(const Word& w);

bool are_conjugate(const Word& u, const Word& v);

// Class of the unoriented curve: the smaller of c and c^{-1}.
CyclicWord unoriented(const CyclicWord& c);

struct PrimitiveRoot {
  CyclicWord root;
  int power = 1;
};
PrimitiveRoot primitive_root(const CyclicWord& c);

struct BallSpec {
  int rank = 2;
  int radius = 0;
};

BigInt sphere_size(int rank, int radius);
BigInt ball_size(const BallSpec& spec);

struct LetterCounts {
  std::vector<std::int64_t> per_letter;    // indexed by letter_index
  std::vector<std::int64_t> exponent_sum;  // indexed by generator
};
LetterCounts letter_counts(const CyclicWord& c, const Alphabet& alphabet);

// Both bullets of the no-cancellation condition of w with respect to the
// spelling c: no tail subword of w is the inverse of an initial subword of c,
// and no tail subword of w is a tail subword of c.
bool satisfies_no_cancellation(const Word& w, const Word& c);

// Exact #([c] intersected with B_n) by breadth-first conjugation with
// length pruning.  Throws DomainError for the trivial class.
std::uint64_t conjugates_in_ball(const CyclicWord& c, int n, const Alphabet& alphabet);

// Every reduced word of the given length, in lexicographic letter_index order.
std::vector<Word> reduced_words_of_length(int rank, int length);

// Canonical representatives of all conjugacy classes of cyclic length exactly
// `length` (oriented: c and c^{-1} are both listed when distinct).
std::vector<CyclicWord> cyclic_words_of_length(int rank, int length);

}  // namespace curvelab
