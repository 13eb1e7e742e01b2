#include <doctest.h>

#include <algorithm>
#include <random>

#include "provel/semiring.hpp"

using namespace provel;

namespace {

Word w(std::initializer_list<const char*> syms) {
  Word out;
  for (const char* s : syms) out.emplace_back(s);
  return out;
}

constexpr SemiringMode kTrio = SemiringMode::trio_commutative;
constexpr SemiringMode kLap = SemiringMode::left_absorbing;

}  // namespace

TEST_CASE("canonicalize: commutative sorts and deduplicates") {
  CHECK(canonicalize(w({"x", "u", "x", "v"}), kTrio).canonical ==
        w({"u", "v", "x"}));
  CHECK(canonicalize(w({"u"}), kTrio).canonical == w({"u"}));
  CHECK(canonicalize(Word{}, kTrio).is_unit());
}

TEST_CASE("canonicalize: left-absorbing keeps first occurrences") {
  CHECK(canonicalize(w({"u", "v", "u"}), kLap).canonical == w({"u", "v"}));
  CHECK(canonicalize(w({"v", "u"}), kLap).canonical == w({"v", "u"}));
  CHECK(canonicalize(w({"u", "v"}), kLap) != canonicalize(w({"v", "u"}), kLap));
  CHECK(canonicalize(Word{}, kLap).is_unit());
}

TEST_CASE("language concatenation and union") {
  FiniteLanguage u{w({"u"})};
  FiniteLanguage v{w({"v"})};
  CHECK(lang_concat(u, v) == FiniteLanguage{w({"u", "v"})});
  CHECK(lang_concat({}, v).empty());
  CHECK(lang_concat(v, {}).empty());
  FiniteLanguage eps{Word{}};
  FiniteLanguage wuv{w({"w", "u", "v"})};
  CHECK(lang_concat(eps, wuv) == wuv);
  CHECK(lang_concat(wuv, eps) == wuv);
  CHECK(lang_union(u, v) == FiniteLanguage{w({"u"}), w({"v"})});
}

TEST_CASE("k-equivalence") {
  FiniteLanguage a{w({"u", "v"}), w({"u"})};
  FiniteLanguage b{w({"u", "v", "u"}), w({"u"}), w({"u", "v", "u", "v", "u"})};
  CHECK(k_equivalent(a, b, kTrio));
  CHECK(k_equivalent(a, a, kTrio));
  CHECK(k_equivalent(a, a, kLap));
  CHECK_FALSE(k_equivalent({w({"u", "v"})}, {w({"v", "u"})}, kLap));
  CHECK(k_equivalent({w({"u", "v"})}, {w({"v", "u"})}, kTrio));
}

TEST_CASE("rendering") {
  CHECK(render_word(w({"u", "v", "x"})) == "u*v*x");
  CHECK(render_word(Word{}) == "1");
  CHECK(render_monomial(canonicalize(w({"x", "u"}), kTrio)) == "u*x");
}

TEST_CASE("canonicalize is idempotent: exhaustive to length 10 over 5 vars") {
  const std::vector<Variable> vars{"a", "b", "c", "d", "e"};
  Word word;
  std::size_t checked = 0;
  std::size_t failures = 0;
  auto visit = [&](auto&& self, int remaining) -> void {
    for (auto mode : {kTrio, kLap}) {
      Monomial once = canonicalize(word, mode);
      if (canonicalize(once.canonical, mode).canonical != once.canonical)
        ++failures;
    }
    ++checked;
    if (remaining == 0) return;
    for (const auto& v : vars) {
      word.push_back(v);
      self(self, remaining - 1);
      word.pop_back();
    }
  };
  visit(visit, 10);
  CHECK(failures == 0);
  CHECK(checked == 12207031u);  // (5^11 - 1) / 4
}

TEST_CASE("commutative canonical form is permutation invariant") {
  std::mt19937 rng(7);
  const std::vector<Variable> vars{"a", "b", "c", "d", "e"};
  for (int i = 0; i < 2000; ++i) {
    std::uniform_int_distribution<int> len(0, 8);
    Word word;
    for (int j = len(rng); j > 0; --j)
      word.push_back(vars[std::uniform_int_distribution<std::size_t>(
          0, vars.size() - 1)(rng)]);
    Word shuffled = word;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(canonicalize(word, kTrio) == canonicalize(shuffled, kTrio));
  }
}

TEST_CASE("left absorption is a congruence for concatenation") {
  std::mt19937 rng(11);
  const std::vector<Variable> vars{"a", "b", "c", "d"};
  auto rand_word = [&](int max_len) {
    Word word;
    for (int j = std::uniform_int_distribution<int>(0, max_len)(rng); j > 0; --j)
      word.push_back(vars[std::uniform_int_distribution<std::size_t>(
          0, vars.size() - 1)(rng)]);
    return word;
  };
  for (int i = 0; i < 2000; ++i) {
    Word a = rand_word(6), b = rand_word(6);
    Word ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    Word ca_b = canonicalize(a, kLap).canonical;
    ca_b.insert(ca_b.end(), b.begin(), b.end());
    CHECK(canonicalize(ab, kLap) == canonicalize(ca_b, kLap));
  }
}

TEST_CASE("k-equivalence is an equivalence relation on sampled languages") {
  std::mt19937 rng(13);
  const std::vector<Variable> vars{"a", "b", "c"};
  auto rand_lang = [&] {
    FiniteLanguage l;
    for (int j = std::uniform_int_distribution<int>(0, 5)(rng); j > 0; --j) {
      Word word;
      for (int k = std::uniform_int_distribution<int>(0, 4)(rng); k > 0; --k)
        word.push_back(vars[std::uniform_int_distribution<std::size_t>(
            0, vars.size() - 1)(rng)]);
      l.insert(std::move(word));
    }
    return l;
  };
  for (auto mode : {kTrio, kLap}) {
    for (int i = 0; i < 300; ++i) {
      FiniteLanguage a = rand_lang(), b = rand_lang(), c = rand_lang();
      CHECK(k_equivalent(a, a, mode));
      CHECK(k_equivalent(a, b, mode) == k_equivalent(b, a, mode));
      if (k_equivalent(a, b, mode) && k_equivalent(b, c, mode))
        CHECK(k_equivalent(a, c, mode));
    }
  }
}

TEST_CASE("language algebra: associativity, commutativity, distribution") {
  std::mt19937 rng(17);
  const std::vector<Variable> vars{"a", "b"};
  auto rand_lang = [&] {
    FiniteLanguage l;
    for (int j = std::uniform_int_distribution<int>(0, 4)(rng); j > 0; --j) {
      Word word;
      for (int k = std::uniform_int_distribution<int>(0, 3)(rng); k > 0; --k)
        word.push_back(vars[std::uniform_int_distribution<std::size_t>(
            0, vars.size() - 1)(rng)]);
      l.insert(std::move(word));
    }
    return l;
  };
  for (int i = 0; i < 300; ++i) {
    FiniteLanguage a = rand_lang(), b = rand_lang(), c = rand_lang();
    CHECK(lang_concat(lang_concat(a, b), c) == lang_concat(a, lang_concat(b, c)));
    CHECK(lang_union(a, b) == lang_union(b, a));
    CHECK(lang_union(lang_union(a, b), c) == lang_union(a, lang_union(b, c)));
    CHECK(lang_union(a, a) == a);
    CHECK(lang_concat(a, lang_union(b, c)) ==
          lang_union(lang_concat(a, b), lang_concat(a, c)));
    CHECK(lang_concat(lang_union(a, b), c) ==
          lang_union(lang_concat(a, c), lang_concat(b, c)));
  }
}
