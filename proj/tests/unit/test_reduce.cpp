#include <set>

#include "doctest.h"
#include "mumall/cutelim.hpp"
#include "mumall/random.hpp"
#include "support.hpp"

using namespace mumall;
using mumall::testing::cut_positions;
using mumall::testing::fixture;

namespace {

TreeNode top_axiom(const Sequent& s, int p) {
  TreeNode t;
  t.sequent = s;
  t.rule = Rule::top(p);
  return t;
}

}  // namespace

TEST_SUITE("reduce") {
  TEST_CASE("permute_to builds an exch chain") {
    const Sequent s{parse_formula("top"), parse_formula("1"), parse_formula("0"), parse_formula("bot")};
    const TreeNode t = top_axiom(s, 0);
    const Sequent target{s[3], s[2], s[1], s[0]};
    const TreeNode p = permute_to(t, target);
    CHECK(p.sequent == target);
    CHECK(validate_tree(p).empty());
    CHECK(count_rule(p, RuleName::Exch) == 6);
    CHECK(permute_to(t, s) == t);
    CHECK_THROWS(permute_to(t, Sequent{s[0], s[0], s[1], s[2]}));
  }

  TEST_CASE("make_cut moves both cut formulas into place") {
    const Formula phi = parse_formula("1 + 0");
    const TreeNode a = top_axiom({phi, parse_formula("top"), parse_formula("bot")}, 1);
    const TreeNode b = top_axiom({parse_formula("1"), parse_formula("top"), negate(phi)}, 1);
    const TreeNode c = make_cut(a, 0, b, 2);
    CHECK(validate_tree(c).empty());
    CHECK(c.sequent.size() == 4);
    CHECK(*c.rule->cut_formula == phi);
    CHECK_THROWS(make_cut(a, 1, b, 2));
  }

  TEST_CASE("the unit step erases the cut") {
    const TreeNode t = unfold_to_depth(fixture("unit_cut"), 6);
    const auto rs = reduce_step(t, {});
    REQUIRE(rs.size() == 1);
    CHECK(rs[0].kind == ReductionKind::CriticalUnit);
    CHECK_FALSE(contains_cut(rs[0].tree));
    CHECK(rs[0].tree.sequent == t.sequent);
    CHECK(validate_tree(rs[0].tree).empty());
  }

  TEST_CASE("fixpoint step on the left derivation") {
    const TreeNode t = unfold_to_depth(fixture("fig_left"), 4);
    const auto rs = reduce_step(t, {});
    REQUIRE(rs.size() == 1);
    CHECK(rs[0].kind == ReductionKind::CriticalFix);
    CHECK(rs[0].tree.sequent == t.sequent);
    CHECK(validate_tree(rs[0].tree).empty());
  }

  TEST_CASE("two commutations when neither premise is principal on the cut") {
    const TreeNode t = unfold_to_depth(fixture("ic_case4"), 4);
    const auto rs = reduce_step(t, {});
    REQUIRE(rs.size() == 2);
    for (const Reduct& r : rs) {
      CHECK(r.kind == ReductionKind::CommuteUnary);
      CHECK(validate_tree(r.tree).empty());
      CHECK(r.tree.rule->name == RuleName::Nu);
    }
    CHECK(reduce_step(t, {}, 1).size() == 1);
    CHECK_THROWS(reduce_step(t, {}, 2));
  }

  TEST_CASE("truncated premises need more depth") {
    const TreeNode t = unfold_to_depth(fixture("fig_left"), 1);
    CHECK_THROWS_AS(reduce_step(t, {}), NeedsMoreDepth);
    CHECK_THROWS(reduce_step(t, {0}));
  }

  TEST_CASE("an exch moving the cut formula does not commute") {
    const Formula phi = parse_formula("1");
    const TreeNode up = top_axiom({parse_formula("top"), phi}, 0);
    TreeNode left;
    left.sequent = {phi, parse_formula("top")};
    left.rule = Rule::exch(0);
    left.children = {up};
    TreeNode right;
    right.sequent = {negate(phi), parse_formula("top")};
    right.rule = Rule::top(1);
    const TreeNode c = make_cut(permute_to(left, {parse_formula("top"), phi}), 1, right, 0);
    // the premise now ends in a second exch on the cut formula
    const auto rs = reduce_step(c, {});
    REQUIRE(rs.size() == 1);
    CHECK(rs[0].kind == ReductionKind::CommuteUnary);
    CHECK(rs[0].tree.rule->name == RuleName::Top);
  }

  TEST_CASE("random trees: every reduct is sound") {
    Rng rng(21);
    std::set<ReductionKind> seen;
    for (int i = 0; i < 200; ++i) {
      const TreeNode t = random_cut_tree(rng, 6);
      REQUIRE(validate_tree(t).empty());
      for (const Position& p : cut_positions(t)) {
        for (const Reduct& r : reduce_step(t, p)) {
          seen.insert(r.kind);
          CHECK(r.tree.sequent == t.sequent);
          CHECK(validate_tree(r.tree).empty());
          if (r.kind == ReductionKind::CriticalUnit)
            CHECK(count_rule(r.tree, RuleName::Cut) + 1 == count_rule(t, RuleName::Cut));
        }
      }
    }
    CHECK(seen.size() >= 6);
  }
}
