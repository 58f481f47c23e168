#include "doctest.h"
#include "mumall/formula.hpp"
#include "mumall/random.hpp"

using namespace mumall;

TEST_SUITE("formula") {
  TEST_CASE("parse and render round trip") {
    for (const char* s : {"1", "bot", "0", "top", "mu X. X", "nu X. X * X", "(1 * bot) @ (0 + top)", "mu X. nu Y. X + Y",
                          "nu X. (X @ bot) & 1"}) {
      const Formula f = parse_formula(s);
      CHECK(parse_formula(render(f)) == f);
    }
  }

  TEST_CASE("binder names do not matter") {
    CHECK(parse_formula("mu X. X + 1") == parse_formula("mu Y. Y + 1"));
    CHECK(parse_formula("mu X. nu Y. X") != parse_formula("mu X. nu Y. Y"));
  }

  TEST_CASE("negation dualises every connective") {
    CHECK(negate(parse_formula("1 * bot")) == parse_formula("bot @ 1"));
    CHECK(negate(parse_formula("0 + top")) == parse_formula("top & 0"));
    CHECK(negate(parse_formula("mu X. X + 1")) == parse_formula("nu X. X & bot"));
    CHECK(negate(parse_formula("nu X. mu Y. X * Y")) == parse_formula("mu X. nu Y. X @ Y"));
  }

  TEST_CASE("negation is an involution on random formulas") {
    Rng rng(11);
    for (int i = 0; i < 300; ++i) {
      const Formula f = random_formula(rng, 6);
      REQUIRE(negate(negate(f)) == f);
      CHECK(negate(f).size() == f.size());
    }
  }

  TEST_CASE("unfolding substitutes the fixpoint for its variable") {
    const Formula f = parse_formula("mu X. X + 1");
    CHECK(unfold(f) == Formula::plus(f, Formula::one()));
    CHECK_THROWS(unfold(Kind::Nu, f));
    CHECK_THROWS(unfold(parse_formula("1")));
  }

  TEST_CASE("substitution of a closed formula") {
    const Formula pre = parse_preformula("X * (mu Y. X + Y)");
    const Formula v = parse_formula("nu Z. Z");
    const Formula r = substitute(pre, "X", v);
    CHECK(r.closed());
    CHECK(r == parse_formula("(nu Z. Z) * (mu Y. (nu Z. Z) + Y)"));
    CHECK(free_variables(pre) == std::vector<std::string>{"X"});
  }

  TEST_CASE("parse errors carry an offset") {
    try {
      parse_formula("1 * ");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.offset() >= 3);
    }
    CHECK_THROWS_AS(parse_formula("X * 1"), FreeVariableError);
    CHECK_THROWS_AS(parse_formula("mu . X"), ParseError);
  }

  TEST_CASE("proper subformula") {
    const Formula f = parse_formula("(1 * bot) @ top");
    CHECK(is_proper_subformula(parse_formula("bot"), f));
    CHECK_FALSE(is_proper_subformula(f, f));
  }
}
