#include <doctest.h>

#include <random>

#include "provel/ara.hpp"
#include "support/generators.hpp"

using namespace provel;

namespace {

Ara word_ara(const Word& w, const std::string& name = "w") {
  std::vector<NfaTransition> trans;
  for (std::size_t i = 0; i < w.size(); ++i)
    trans.push_back({static_cast<State>(i), Symbol::base(w[i]),
                     static_cast<State>(i + 1)});
  return ara_from_nfa(
      make_nfa(0, w.size() + 1, std::move(trans), {0},
               {static_cast<State>(w.size())}),
      name);
}

Word rep(const std::string& s, std::size_t n) { return Word(n, s); }

}  // namespace

TEST_CASE("power family structure and membership") {
  for (int n = 1; n <= 10; ++n) {
    Ara fam = power_family(n);
    CHECK(fam.is_well_formed());
    CHECK(fam.total_states() == static_cast<std::size_t>(3 * n));
    CHECK(fam.components().size() == static_cast<std::size_t>(n));
  }
  Ara p1 = power_family(1);
  CHECK(membership(p1, rep("a", 2)));
  CHECK_FALSE(membership(p1, rep("a", 1)));
  CHECK_FALSE(membership(p1, rep("a", 3)));
  CHECK_FALSE(membership(p1, {}));

  Ara p3 = power_family(3);
  CHECK(membership(p3, rep("a", 8)));
  CHECK_FALSE(membership(p3, rep("a", 7)));
  CHECK_FALSE(membership(p3, rep("a", 9)));

  Ara p10 = power_family(10);
  CHECK(membership(p10, rep("a", 1024)));
  CHECK_FALSE(membership(p10, rep("a", 1023)));

  CHECK_THROWS_AS(power_family(0), Error);
}

TEST_CASE("well-formedness violations") {
  // self call
  Nfa self = make_nfa(0, 2, {{0, Symbol::call(0), 1}}, {0}, {1});
  Ara bad({{self, ""}}, 0, {"a"});
  CHECK_FALSE(bad.is_well_formed());
  CHECK_FALSE(well_formed(bad));

  // shared state ids between components
  Nfa n1 = make_nfa(0, 2, {{0, Symbol::base("a"), 1}}, {0}, {1});
  Nfa n2 = make_nfa(1, 2, {{1, Symbol::base("a"), 2}}, {1}, {2});
  Ara overlap({{n1, ""}, {n2, ""}}, 1, {"a"});
  CHECK_FALSE(overlap.is_well_formed());

  // forward call
  Nfa fwd = make_nfa(0, 2, {{0, Symbol::call(1), 1}}, {0}, {1});
  Nfa plain = make_nfa(2, 2, {{2, Symbol::base("a"), 3}}, {2}, {3});
  CHECK_FALSE(Ara({{fwd, ""}, {plain, ""}}, 1, {"a"}).is_well_formed());

  // base symbol outside the declared alphabet
  Nfa foreign = make_nfa(0, 2, {{0, Symbol::base("z"), 1}}, {0}, {1});
  CHECK_FALSE(Ara({{foreign, ""}}, 0, {"a"}).is_well_formed());

  CHECK(power_family(3).is_well_formed());
  CHECK(membership(power_family(2), rep("a", 4)));
  CHECK_THROWS_AS(membership(bad, {}), Error);
}

TEST_CASE("membership accepts the empty word through an initial-final state") {
  Nfa eps = make_nfa(0, 1, {}, {0}, {0});
  Ara a = ara_from_nfa(eps);
  CHECK(membership(a, {}));
  CHECK_FALSE(membership(a, {"a"}));
}

TEST_CASE("inline expansion") {
  Ara p2 = power_family(2);
  Nfa flat = inline_expand(p2, 1000);
  CHECK(flat.states.size() == 9);  // 3 top states plus two 3-state copies
  for (std::size_t len = 0; len <= 10; ++len)
    CHECK(accepts(flat, rep("a", len)) == (len == 4));

  // a single trigger-free component comes back unchanged
  Nfa plain = make_nfa(0, 2, {{0, Symbol::base("a"), 1}}, {0}, {1});
  Nfa same = inline_expand(ara_from_nfa(plain), 100);
  CHECK(same.states == plain.states);
  CHECK(same.transitions == plain.transitions);
  CHECK(same.initial == plain.initial);
  CHECK(same.accepting == plain.accepting);

  CHECK_THROWS_AS(inline_expand(power_family(12), 1000), SizeLimitError);
}

TEST_CASE("union and concatenation") {
  Ara u = word_ara({"u"});
  Ara v = word_ara({"v"});

  Ara cat = ara_concat({u, v});
  CHECK(cat.is_well_formed());
  CHECK(membership(cat, {"u", "v"}));
  CHECK_FALSE(membership(cat, {"v", "u"}));
  CHECK_FALSE(membership(cat, {"u"}));

  Ara uni = ara_union({u, v});
  CHECK(uni.is_well_formed());
  CHECK(membership(uni, {"u"}));
  CHECK(membership(uni, {"v"}));
  CHECK_FALSE(membership(uni, {"u", "v"}));
  CHECK_FALSE(membership(uni, {}));

  // doubling by self-concatenation, exactly how the power family grows
  Ara p1 = power_family(1);
  Ara doubled = ara_concat({p1, p1});
  for (std::size_t len = 0; len <= 8; ++len)
    CHECK(membership(doubled, rep("a", len)) == (len == 4));
}

TEST_CASE("intersection emptiness and witnesses") {
  Ara empty = ara_from_nfa(make_nfa(0, 2, {}, {0}, {1}));
  CHECK_FALSE(intersect_empty(empty, ordered_language_nfa({})).has_value());

  Ara u = word_ara({"u"});
  auto w = intersect_empty(u, ordered_language_nfa({"u"}));
  REQUIRE(w.has_value());
  CHECK(*w == Word{"u"});
  CHECK_FALSE(intersect_empty(u, ordered_language_nfa({"v"})).has_value());
  CHECK(intersects(u, ordered_language_nfa({"u"})));

  // trigger symbols in the query are rejected
  Nfa triggered = make_nfa(0, 2, {{0, Symbol::call(0), 1}}, {0}, {1});
  CHECK_THROWS_AS(intersect_empty(u, triggered), Error);
}

TEST_CASE("membership agrees with flat acceptance on random instances") {
  std::mt19937 rng(41);
  const auto words = provel::testing::all_words({"a", "b"}, 8);
  for (int i = 0; i < 60; ++i) {
    Ara a = provel::testing::random_ara(rng);
    Nfa flat = inline_expand(a, 200);
    std::size_t mismatches = 0;
    for (const auto& w : words)
      if (membership(a, w) != accepts(flat, w)) ++mismatches;
    CHECK(mismatches == 0);
  }
}

TEST_CASE("intersection agrees with the flat product and witnesses are minimal") {
  std::mt19937 rng(43);
  const auto words = provel::testing::all_words({"a", "b"}, 8);
  for (int i = 0; i < 60; ++i) {
    Ara a = provel::testing::random_ara(rng);
    Nfa flat = inline_expand(a, 200);
    std::vector<Variable> ordering;
    if (i % 3 == 0) ordering = {"a"};
    if (i % 3 == 1) ordering = {"a", "b"};
    if (i % 3 == 2) ordering = {"b", "a"};
    Nfa query = ordered_language_nfa(ordering);

    std::optional<Word> shortest;
    for (const auto& w : words) {
      if (accepts(flat, w) && accepts(query, w)) {
        if (!shortest || w.size() < shortest->size()) shortest = w;
      }
    }
    auto witness = intersect_empty(a, query);
    if (!shortest) {
      // no witness of length <= 8; anything longer must still satisfy both
      if (witness.has_value()) {
        CHECK(witness->size() > 8);
        CHECK(membership(a, *witness));
        CHECK(accepts(query, *witness));
      }
    } else {
      REQUIRE(witness.has_value());
      CHECK(witness->size() == shortest->size());
      CHECK(membership(a, *witness));
      CHECK(accepts(query, *witness));
    }
  }
}

TEST_CASE("union/concatenation languages via flat expansion") {
  std::mt19937 rng(47);
  const auto words = provel::testing::all_words({"a", "b"}, 6);
  for (int i = 0; i < 25; ++i) {
    Ara a = provel::testing::random_ara(rng);
    Ara b = provel::testing::random_ara(rng);
    Nfa fa = inline_expand(a, 200);
    Nfa fb = inline_expand(b, 200);
    Ara cat = ara_concat({a, b});
    Ara uni = ara_union({a, b});
    std::size_t mismatches = 0;
    for (const auto& w : words) {
      bool in_union = accepts(fa, w) || accepts(fb, w);
      if (membership(uni, w) != in_union) ++mismatches;
      bool in_concat = false;
      for (std::size_t cut = 0; cut <= w.size() && !in_concat; ++cut) {
        Word left(w.begin(), w.begin() + cut);
        Word right(w.begin() + cut, w.end());
        in_concat = accepts(fa, left) && accepts(fb, right);
      }
      if (membership(cat, w) != in_concat) ++mismatches;
    }
    CHECK(mismatches == 0);
  }
}

TEST_CASE("membership table stays within the polynomial bound") {
  Ara p6 = power_family(6);
  Word w = rep("a", 64);
  MembershipStats stats;
  CHECK(membership(p6, w, &stats));
  std::size_t states = p6.total_states();
  CHECK(stats.memo_cells <= states * states * (w.size() + 1) * (w.size() + 1));
  CHECK(stats.memo_cells <= p6.components().size() * (w.size() + 1));
}

TEST_CASE("json round trip") {
  Ara p3 = power_family(3);
  Ara back = ara_from_json(to_json(p3));
  CHECK(back.is_well_formed());
  CHECK(back.root() == p3.root());
  CHECK(back.total_states() == p3.total_states());
  REQUIRE(back.components().size() == p3.components().size());
  for (std::size_t i = 0; i < p3.components().size(); ++i) {
    CHECK(back.components()[i].nfa.states == p3.components()[i].nfa.states);
    CHECK(back.components()[i].nfa.transitions ==
          p3.components()[i].nfa.transitions);
    CHECK(back.components()[i].name == p3.components()[i].name);
  }
  CHECK(membership(back, rep("a", 8)));
  CHECK_FALSE(membership(back, rep("a", 7)));

  CHECK_THROWS_AS(ara_from_json("{not json"), Error);
  CHECK_THROWS_AS(ara_from_json("{\"automata\": []}"), Error);
}

TEST_CASE("dot export labels components and call edges") {
  std::string dot = to_dot(power_family(2));
  CHECK(dot.find("cluster_0") != std::string::npos);
  CHECK(dot.find("call:0 A1") != std::string::npos);
}
