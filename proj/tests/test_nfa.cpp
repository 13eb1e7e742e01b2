#include <doctest.h>

#include <algorithm>

#include "provel/nfa.hpp"
#include "support/generators.hpp"

using namespace provel;

TEST_CASE("acceptance basics") {
  Nfa single = make_nfa(0, 2, {{0, Symbol::base("u"), 1}}, {0}, {1});
  CHECK(accepts(single, {"u"}));
  CHECK_FALSE(accepts(single, {}));
  CHECK_FALSE(accepts(single, {"u", "u"}));
  CHECK_FALSE(accepts(single, {"z"}));  // foreign symbol: false, not an error

  Nfa eps = make_nfa(0, 2, {}, {0}, {0});
  CHECK(accepts(eps, {}));
  CHECK_FALSE(accepts(eps, {"u"}));
}

TEST_CASE("ordered language automaton examples") {
  Nfa uv = ordered_language_nfa({"u", "v"});
  CHECK(accepts(uv, {"u", "v"}));
  CHECK(accepts(uv, {"u", "u", "v"}));
  CHECK(accepts(uv, {"u", "v", "u", "v"}));
  CHECK_FALSE(accepts(uv, {"v", "u"}));
  CHECK_FALSE(accepts(uv, {"u"}));
  CHECK_FALSE(accepts(uv, {}));

  Nfa empty_ordering = ordered_language_nfa({});
  CHECK(accepts(empty_ordering, {}));
  CHECK_FALSE(accepts(empty_ordering, {"u"}));

  Nfa wuv = ordered_language_nfa({"w", "u", "v"});
  CHECK(accepts(wuv, {"w", "u", "v"}));
  CHECK_FALSE(accepts(wuv, {"u", "v", "w"}));

  CHECK_THROWS_AS(ordered_language_nfa({"u", "u"}), Error);
}

TEST_CASE("ordered language automaton structure") {
  for (std::size_t k = 0; k <= 4; ++k) {
    std::vector<Variable> ordering;
    for (std::size_t i = 0; i < k; ++i)
      ordering.push_back(std::string(1, static_cast<char>('a' + i)));
    Nfa nfa = ordered_language_nfa(ordering);
    CHECK(nfa.states.size() == k + 1);
    CHECK(nfa.transitions.size() == k + k * (k + 1) / 2);
    CHECK(nfa.valid());
  }
}

namespace {

// first occurrences of w's symbols follow the ordering, w uses only and all
// of its symbols
bool ordered_language_predicate(const Word& w,
                                const std::vector<Variable>& ordering) {
  std::vector<Variable> firsts;
  for (const auto& s : w) {
    if (std::find(ordering.begin(), ordering.end(), s) == ordering.end())
      return false;
    if (std::find(firsts.begin(), firsts.end(), s) == firsts.end())
      firsts.push_back(s);
  }
  return firsts == ordering;
}

}  // namespace

TEST_CASE("ordered language matches its first-occurrence predicate") {
  const std::vector<Variable> pool{"a", "b", "c", "d"};  // d stays foreign
  for (std::size_t k = 0; k <= 3; ++k) {
    std::vector<Variable> ordering(pool.begin(), pool.begin() + k);
    Nfa nfa = ordered_language_nfa(ordering);
    std::size_t mismatches = 0;
    for (const auto& w : provel::testing::all_words(pool, 6)) {
      if (accepts(nfa, w) != ordered_language_predicate(w, ordering))
        ++mismatches;
    }
    CHECK(mismatches == 0);
  }
}

TEST_CASE("ordered language acceptance pins the left-absorbing canonical form") {
  const std::vector<Variable> ordering{"b", "a", "c"};
  Nfa nfa = ordered_language_nfa(ordering);
  for (const auto& w : provel::testing::all_words({"a", "b", "c"}, 6)) {
    if (accepts(nfa, w))
      CHECK(canonicalize(w, SemiringMode::left_absorbing).canonical == ordering);
  }
}

TEST_CASE("dot export") {
  Nfa nfa = make_nfa(0, 2, {{0, Symbol::base("u"), 1}}, {0}, {1});
  std::string dot = to_dot(nfa);
  CHECK(dot.find("doublecircle") != std::string::npos);
  CHECK(dot.find("label=\"u\"") != std::string::npos);
}
