#include <deque>
#include <map>

#include "doctest.h"
#include "mumall/closure.hpp"
#include "mumall/random.hpp"

using namespace mumall;

namespace {

// breadth-first saturation under fl_successors
std::map<std::string, Formula> brute_closure(const std::vector<Formula>& seeds) {
  std::map<std::string, Formula> seen;
  std::deque<Formula> todo(seeds.begin(), seeds.end());
  while (!todo.empty()) {
    const Formula f = todo.front();
    todo.pop_front();
    if (!seen.emplace(canonical_render(f), f).second) continue;
    for (const Formula& g : fl_successors(f)) todo.push_back(g);
  }
  return seen;
}

}  // namespace

TEST_SUITE("closure") {
  TEST_CASE("closure agrees with breadth-first saturation") {
    Rng rng(5);
    for (int i = 0; i < 150; ++i) {
      const Formula f = random_formula(rng, 6);
      const FlClosure c = FlClosure::compute({f});
      const auto brute = brute_closure({f});
      REQUIRE(c.size() == brute.size());
      for (const auto& [_, g] : brute) CHECK(c.contains(g));
    }
  }

  TEST_CASE("saturation is idempotent") {
    Rng rng(6);
    for (int i = 0; i < 100; ++i) {
      const FlClosure c = FlClosure::compute({random_formula(rng, 5)});
      const FlClosure again = FlClosure::compute(c.formulas());
      CHECK(again.size() == c.size());
    }
  }

  TEST_CASE("ranks: nu even, mu odd, outer binders first") {
    const Formula f = parse_formula("mu X. nu Y. X + Y");
    const FlClosure c = FlClosure::compute({f});
    for (const Formula& g : c.fixpoints_by_priority()) CHECK((c.rank(g) % 2 == 0) == (g.kind() == Kind::Nu));
    CHECK(c.rank(f) < c.rank(unfold(f)));
    CHECK(c.lower_priority(unfold(f), f));
    CHECK_FALSE(c.lower_priority(f, unfold(f)));
  }

  TEST_CASE("FL order") {
    const Formula f = parse_formula("nu X. X * 1");
    const FlClosure c = FlClosure::compute({f});
    CHECK(c.equivalent(f, unfold(f)));
    CHECK(c.strictly_below(Formula::one(), f));
    CHECK(c.leq(Formula::one(), f));
    CHECK_FALSE(c.leq(f, Formula::one()));
  }

  TEST_CASE("both tie-breaks give a total order extending the preorder") {
    const Formula f = parse_formula("(mu X. X) * (nu Y. Y)");
    for (TieBreak t : {TieBreak::Lexicographic, TieBreak::ReverseLexicographic}) {
      const FlClosure c = FlClosure::compute({f}, t);
      CHECK(c.fixpoints_by_priority().size() == 2);
    }
    const auto a = FlClosure::compute({f}, TieBreak::Lexicographic).fixpoints_by_priority();
    const auto b = FlClosure::compute({f}, TieBreak::ReverseLexicographic).fixpoints_by_priority();
    CHECK(a.front() == b.back());
  }
}
