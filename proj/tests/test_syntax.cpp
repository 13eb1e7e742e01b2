#include <doctest.h>

#include <random>

#include "provel/syntax.hpp"
#include "support/generators.hpp"

using namespace provel;

namespace {

const char* kExample1 =
    "# five-axiom example\n"
    "B & C <= D : u\n"
    "\n"
    "top <= B : v\n"
    "A <= C : w\n"
    "A <= ex R : x\n"
    "ex R . B <= B : y\n";

}  // namespace

TEST_CASE("parse a single atomic inclusion") {
  AnnotatedTBox tbox = parse_tbox("A <= B : u");
  REQUIRE(tbox.size() == 1);
  const auto& e = tbox.entries()[0];
  REQUIRE(std::holds_alternative<AtomicGci>(e.axiom));
  const auto& a = std::get<AtomicGci>(e.axiom);
  CHECK(a.lhs == Concept::named("A"));
  CHECK(a.rhs == Concept::named("B"));
  REQUIRE(e.annotation.has_value());
  CHECK(*e.annotation == "u");
}

TEST_CASE("parse the five-axiom example file") {
  AnnotatedTBox tbox = parse_tbox(kExample1);
  REQUIRE(tbox.size() == 5);
  CHECK(tbox.signature().variables ==
        std::set<std::string>{"u", "v", "w", "x", "y"});
  CHECK(tbox.signature().concepts == std::set<std::string>{"A", "B", "C", "D"});
  CHECK(tbox.signature().roles == std::set<std::string>{"R"});

  CHECK(std::holds_alternative<ConjGci>(tbox.entries()[0].axiom));
  CHECK(std::holds_alternative<AtomicGci>(tbox.entries()[1].axiom));
  CHECK(std::get<AtomicGci>(tbox.entries()[1].axiom).lhs.is_top());
  CHECK(std::holds_alternative<ExistGci>(tbox.entries()[3].axiom));
  CHECK(std::holds_alternative<QualExistGci>(tbox.entries()[4].axiom));
}

TEST_CASE("signature examples") {
  CHECK(parse_tbox("").size() == 0);
  Signature empty = signature(parse_tbox(""));
  CHECK(empty.concepts.empty());
  CHECK(empty.roles.empty());
  CHECK(empty.variables.empty());

  Signature two = signature(parse_tbox("A <= B : m\nB <= C : n\n"));
  CHECK(two.concepts == std::set<std::string>{"A", "B", "C"});
  CHECK(two.roles.empty());
  CHECK(two.variables == std::set<std::string>{"m", "n"});
}

TEST_CASE("conjunction on the right-hand side is rejected") {
  CHECK_THROWS_WITH_AS(parse_tbox("A <= B & C : u"),
                       doctest::Contains("normal form"), ParseError);
}

TEST_CASE("other malformed axioms") {
  CHECK_THROWS_AS(parse_tbox("A <= ex R . C : u"), ParseError);
  CHECK_THROWS_AS(parse_tbox("A & B & C <= D : u"), ParseError);
  CHECK_THROWS_AS(parse_tbox("ex R . ex S . A <= B : u"), ParseError);
  CHECK_THROWS_AS(parse_tbox("A <= B"), ParseError);         // missing label
  CHECK_THROWS_AS(parse_tbox("A <= B : u : v"), ParseError); // trailing input
  CHECK_THROWS_AS(parse_tbox("top [= R : u"), ParseError);
  CHECK_THROWS_AS(parse_tbox("A <= 1 : u"), ParseError);
}

TEST_CASE("syntax errors carry the line number") {
  try {
    parse_tbox("A <= B : u\n# comment\nB <= : v\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
  }
}

TEST_CASE("duplicate axioms and reused annotation variables are rejected") {
  CHECK_THROWS_WITH_AS(parse_tbox("A <= B : u\nA <= B : v\n"),
                       doctest::Contains("duplicate axiom"), ParseError);
  CHECK_THROWS_WITH_AS(parse_tbox("A <= B : u\nB <= C : u\n"),
                       doctest::Contains("more than one axiom"), ParseError);
  // distinct conjunct order is a distinct axiom
  CHECK_NOTHROW(parse_tbox("B & C <= D : u\nC & B <= D : v\n"));
  // the unit label may annotate any number of axioms
  CHECK_NOTHROW(parse_tbox("A <= B : 1\nB <= C : 1\n"));
}

TEST_CASE("namespaces of concepts, roles and variables are disjoint") {
  CHECK_THROWS_AS(parse_tbox("A <= B : A"), Error);
  CHECK_THROWS_AS(parse_tbox("A <= ex R : u\nR <= B : v\n"), Error);
}

TEST_CASE("whitespace is flexible, keywords are exact") {
  AnnotatedTBox tight = parse_tbox("A<=B:u");
  AnnotatedTBox spaced = parse_tbox("  A   <=  B  :  u  ");
  CHECK(tight.entries()[0].axiom == spaced.entries()[0].axiom);
  AnnotatedTBox ran1 = parse_tbox("ran(R) <= A : u");
  AnnotatedTBox ran2 = parse_tbox("ran ( R ) <= A : u");
  CHECK(ran1.entries()[0].axiom == ran2.entries()[0].axiom);
  CHECK_NOTHROW(parse_tbox("R [= S : r"));
}

TEST_CASE("parse queries") {
  Query q = parse_query("A <= D : u*v*w");
  CHECK(q.goal == Axiom{AtomicGci{Concept::named("A"), Concept::named("D")}});
  CHECK(q.monomial == Word{"u", "v", "w"});

  Query q2 = parse_query("A <= C : m*n");
  CHECK(q2.monomial == Word{"m", "n"});

  Query q3 = parse_query("A <= A : 1");
  CHECK(q3.monomial.empty());

  Query q4 = parse_query("A <= ex R : x");
  CHECK(std::holds_alternative<ExistGci>(q4.goal));

  CHECK_THROWS_AS(parse_query("B & C <= D : u"), ParseError);
  CHECK_THROWS_AS(parse_query("ran(R) <= A : u"), ParseError);
  CHECK_THROWS_AS(parse_query("A <= D"), ParseError);
  CHECK_THROWS_AS(parse_query("A <= D : u*"), ParseError);
}

TEST_CASE("parse goals") {
  CHECK(parse_goal("A <= D") ==
        Axiom{AtomicGci{Concept::named("A"), Concept::named("D")}});
  CHECK_THROWS_AS(parse_goal("B & C <= D"), ParseError);
  CHECK_THROWS_AS(parse_goal("A <= D : u"), ParseError);
}

TEST_CASE("print/parse round trip") {
  AnnotatedTBox tbox = parse_tbox(kExample1);
  AnnotatedTBox again = parse_tbox(tbox.print());
  REQUIRE(again.size() == tbox.size());
  for (std::size_t i = 0; i < tbox.size(); ++i) {
    CHECK(again.entries()[i].axiom == tbox.entries()[i].axiom);
    CHECK(again.entries()[i].annotation == tbox.entries()[i].annotation);
  }

  std::mt19937 rng(23);
  for (int i = 0; i < 200; ++i) {
    AnnotatedTBox t = provel::testing::random_tbox(rng);
    AnnotatedTBox rt = parse_tbox(t.print());
    REQUIRE(rt.size() == t.size());
    for (std::size_t j = 0; j < t.size(); ++j) {
      CHECK(rt.entries()[j].axiom == t.entries()[j].axiom);
      CHECK(rt.entries()[j].annotation == t.entries()[j].annotation);
    }
  }
}

TEST_CASE("every axiom satisfies exactly one shape") {
  std::mt19937 rng(29);
  for (int i = 0; i < 100; ++i) {
    AnnotatedTBox t = provel::testing::random_tbox(rng);
    for (const auto& e : t.entries()) {
      int shapes = 0;
      shapes += std::holds_alternative<AtomicGci>(e.axiom);
      shapes += std::holds_alternative<ExistGci>(e.axiom);
      shapes += std::holds_alternative<ConjGci>(e.axiom);
      shapes += std::holds_alternative<QualExistGci>(e.axiom);
      shapes += std::holds_alternative<RangeGci>(e.axiom);
      shapes += std::holds_alternative<RoleIncl>(e.axiom);
      CHECK(shapes == 1);
    }
  }
}

TEST_CASE("signature variables are exactly the non-unit annotations") {
  std::mt19937 rng(31);
  for (int i = 0; i < 100; ++i) {
    AnnotatedTBox t = provel::testing::random_tbox(rng);
    std::set<std::string> anns;
    for (const auto& e : t.entries())
      if (e.annotation) anns.insert(*e.annotation);
    CHECK(t.signature().variables == anns);
    CHECK(t.signature().variables.size() <= t.size());
  }
}
