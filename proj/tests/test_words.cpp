#include "doctest.h"

#include <set>

#include "errors.hpp"
#include "words.hpp"

using namespace curvelab;

namespace {
std::string red(std::string_view s) { return reduce(Word::parse(s)).str(); }
std::string cyc(std::string_view s) { return cyclic_reduce(s).str(); }
}  // namespace

TEST_CASE("free reduction") {
  CHECK(red("aAb") == "b");
  CHECK(red("") == "");
  CHECK(red("abBa") == "aa");
  CHECK(red("abBAab") == "ab");
  CHECK(red(red("abcCBaA")) == red("abcCBaA"));
  CHECK_THROWS_AS(Word::parse("a1"), UsageError);
}

TEST_CASE("cyclic reduction and canonical rotation") {
  CHECK(cyc("baB") == "a");
  CHECK(cyc("ab") == "ab");
  CHECK(cyc("Baab") == "aa");
  CHECK(cyc("ba") == "ab");
  CHECK(cyc("bAB") == "A");
  for (std::string_view w : {"abAB", "aabAb", "bbaBa", "abcabC"}) {
    const std::string base(w);
    for (std::size_t r = 0; r < base.size(); ++r) {
      const std::string rot = base.substr(r) + base.substr(0, r);
      CHECK(cyc(rot) == cyc(base));
    }
  }
  CHECK(are_conjugate(Word::parse("ab"), Word::parse("Abaa")));
  CHECK_FALSE(are_conjugate(Word::parse("ab"), Word::parse("aB")));
}

TEST_CASE("least rotation agrees with brute force") {
  for (int len = 1; len <= 6; ++len) {
    for (const Word& w : reduced_words_of_length(2, len)) {
      Word best = w;
      for (std::size_t r = 1; r < w.size(); ++r) {
        std::vector<Letter> rot(w.begin() + static_cast<std::ptrdiff_t>(r), w.end());
        rot.insert(rot.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(r));
        Word cand(rot);
        if (cand < best) best = cand;
      }
      CHECK(least_rotation(w) == best);
    }
  }
}

TEST_CASE("primitive roots and orientation") {
  auto pr = primitive_root(cyclic_reduce("abab"));
  CHECK(pr.root.str() == "ab");
  CHECK(pr.power == 2);
  CHECK(primitive_root(cyclic_reduce("aab")).power == 1);
  CHECK(unoriented(cyclic_reduce("AB")).str() == "ab");
  CHECK(cyclic_reduce("ab").inverse().str() == "AB");
}

TEST_CASE("sphere and ball sizes") {
  CHECK(sphere_size(2, 2) == 12);
  CHECK(ball_size({2, 2}) == 17);
  CHECK(ball_size({1, 3}) == 7);
  CHECK(sphere_size(2, 0) == 1);
  for (int r = 1; r <= 3; ++r)
    for (int k = 0; k <= 6; ++k) CHECK(sphere_size(r, k) == BigInt(reduced_words_of_length(r, k).size()));
  CHECK(ball_size({2, 60}) > BigInt(1) << 90);
}

TEST_CASE("letter counts") {
  Alphabet ab(2);
  auto lc = letter_counts(cyclic_reduce("abAb"), ab);
  CHECK(lc.per_letter == std::vector<std::int64_t>{1, 1, 2, 0});
  CHECK(lc.exponent_sum == std::vector<std::int64_t>{0, 2});
  lc = letter_counts(cyclic_reduce("aaa"), ab);
  CHECK(lc.per_letter[0] == 3);
}

TEST_CASE("no-cancellation condition") {
  const Word c = cyclic_reduce("aa").word();
  CHECK(satisfies_no_cancellation(Word::parse("b"), c));
  CHECK_FALSE(satisfies_no_cancellation(Word::parse("A"), c));
  CHECK_FALSE(satisfies_no_cancellation(Word::parse("ba"), c));
  CHECK(satisfies_no_cancellation(Word::parse("ab"), cyclic_reduce("ab").word()) == false);
  CHECK(satisfies_no_cancellation(Word::parse("bb"), cyclic_reduce("ab").word()) == false);
  CHECK(satisfies_no_cancellation(Word::parse("aB"), cyclic_reduce("ab").word()));
}

TEST_CASE("conjugates in a ball") {
  Alphabet ab(2);
  CHECK(conjugates_in_ball(cyclic_reduce("a"), 3, ab) == 3);
  CHECK(conjugates_in_ball(cyclic_reduce("a"), 0, ab) == 0);
  // Independent count: every reduced word of length <= n conjugate to c.
  for (std::string_view cs : {"a", "ab", "aab", "abAB"}) {
    const CyclicWord c = cyclic_reduce(cs);
    for (int n = 0; n <= 7; ++n) {
      std::uint64_t direct = 0;
      for (int k = 0; k <= n; ++k)
        for (const Word& w : reduced_words_of_length(2, k))
          if (!w.empty() && cyclic_reduce(w) == c) ++direct;
      CHECK(conjugates_in_ball(c, n, ab) == direct);
    }
  }
  CHECK_THROWS_AS(conjugates_in_ball(CyclicWord{}, 3, ab), DomainError);
}

TEST_CASE("cyclic word enumeration") {
  for (int n = 1; n <= 6; ++n) {
    std::set<std::string> classes;
    for (const Word& w : reduced_words_of_length(2, n))
      if (w[0] != inverse(w.back())) classes.insert(cyclic_reduce(w).str());
    CHECK(cyclic_words_of_length(2, n).size() == classes.size());
  }
  CHECK(cyclic_words_of_length(2, 1).size() == 4);
  CHECK(cyclic_words_of_length(2, 2).size() == 8);
}
