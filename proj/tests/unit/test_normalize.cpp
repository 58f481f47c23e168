#include "doctest.h"
#include "mumall/cutelim.hpp"
#include "support.hpp"

using namespace mumall;
using mumall::testing::fixture;

namespace {

NormalizerOptions at_depth(int d, bool wrap = true) {
  NormalizerOptions o;
  o.target_depth = d;
  o.auto_wrap = wrap;
  return o;
}

}  // namespace

TEST_SUITE("normalize") {
  TEST_CASE("identity precomposition converges to the unfolding") {
    for (const std::string name : {"fig_centre_nu", "fig_centre_mu"}) {
      CAPTURE(name);
      const ProofGraph d = fixture(name);
      Normalizer n(d, at_depth(10));
      n.run();
      REQUIRE(n.stable_at(10));
      CHECK(n.emit_prefix(10) == unfold_to_depth(d, 10));
      CHECK(n.star_violations() == 0);
    }
    for (const auto& f : mumall::testing::identity_formulas()) {
      CAPTURE(f);
      const ProofGraph d = identity_proof(parse_formula(f));
      Normalizer n(d, at_depth(8));
      n.run();
      REQUIRE(n.stable_at(8));
      CHECK(n.emit_prefix(8) == unfold_to_depth(d, 8));
    }
  }

  TEST_CASE("exchanges of d survive identity precomposition") {
    ProofGraph flat;
    const auto a = flat.add_node("a", parse_sequent({"nu X. X", "bot", "top"}), Rule::exch(1));
    const auto b = flat.add_node("b", parse_sequent({"nu X. X", "top", "bot"}), Rule::exch(0));
    const auto c = flat.add_node("c", parse_sequent({"top", "nu X. X", "bot"}), Rule::top(0));
    flat.set_premises(a, {b});
    flat.set_premises(b, {c});
    flat.set_root(a);

    ProofGraph loop;
    const auto x = loop.add_node("x", parse_sequent({"nu X. X", "bot"}), Rule::nu(0));
    const auto y = loop.add_node("y", parse_sequent({"nu X. X", "bot"}), Rule::exch(0));
    const auto z = loop.add_node("z", parse_sequent({"bot", "nu X. X"}), Rule::exch(0));
    loop.set_premises(x, {y});
    loop.set_premises(y, {z});
    loop.set_premises(z, {x});
    loop.set_root(x);

    for (const ProofGraph* d : {&flat, &loop}) {
      REQUIRE(validate_local(*d).empty());
      Normalizer n(*d, at_depth(8));
      n.run();
      REQUIRE(n.stable_at(8));
      CHECK(n.emit_prefix(8) == unfold_to_depth(*d, 8));
    }
  }

  TEST_CASE("finite unit cut terminates") {
    Normalizer n(fixture("unit_cut"), at_depth(5, false));
    CHECK(n.run() == RunStatus::Terminated);
    const TreeNode t = n.emit_prefix(5);
    CHECK_FALSE(contains_cut(t));
    CHECK(t.rule->name == RuleName::One);
    CHECK(n.active_jobs() == 0);
  }

  TEST_CASE("progressing cut fixtures produce valid cut-free prefixes") {
    for (const auto& name : mumall::testing::progressing_cut_fixtures()) {
      CAPTURE(name);
      Normalizer n(fixture(name), at_depth(6));
      const RunStatus st = n.run();
      CHECK((st == RunStatus::Stable || st == RunStatus::Terminated));
      CHECK(n.consistent());
      const TreeNode t = n.emit_prefix(6);
      CHECK_FALSE(contains_cut(t));
      CHECK(validate_tree(t).empty());
      CHECK(t.sequent == fixture(name).conclusion());
    }
  }

  TEST_CASE("stalled cut exhausts the budget") {
    NormalizerOptions o = at_depth(4);
    o.budget = 500;
    Normalizer n(fixture("fig_left"), o);
    CHECK(n.run() == RunStatus::BudgetExhausted);
    CHECK(n.steps() == 500);
    CHECK_FALSE(n.stable_at(1));
    CHECK_THROWS_AS(n.emit_prefix(1), NotStable);
    CHECK(n.depth_log().size() == 500);
  }

  TEST_CASE("emitting below a pending job is refused") {
    NormalizerOptions o;
    o.budget = 3;
    Normalizer n(fixture("zip"), o);
    n.run();
    CHECK_THROWS_AS(n.emit_prefix(8), NotStable);
  }

  TEST_CASE("checkpoint and resume reach the same prefix") {
    Normalizer a(fixture("zip"), at_depth(6));
    a.run();
    NormalizerOptions o = at_depth(6);
    o.budget = 7;
    Normalizer b(fixture("zip"), o);
    b.run();
    REQUIRE(b.status() == RunStatus::BudgetExhausted);
    Normalizer c = Normalizer::resume(nlohmann::json::parse(b.checkpoint().dump()));
    c.extend(100000, 6);
    c.run();
    REQUIRE(c.stable_at(6));
    CHECK(c.emit_prefix(6) == a.emit_prefix(6));
    CHECK(c.steps() == a.steps());
  }

  TEST_CASE("extending the depth continues parked jobs") {
    Normalizer n(fixture("zip"), at_depth(4));
    n.run();
    const TreeNode four = n.emit_prefix(4);
    n.extend(100000, 8);
    n.run();
    REQUIRE(n.stable_at(8));
    const TreeNode eight = n.emit_prefix(8);
    CHECK(unfold_to_depth(tree_to_graph(eight), 4) == four);
  }

  TEST_CASE("events and depth log") {
    Normalizer n(fixture("zip"), at_depth(6));
    n.run();
    const auto& ev = n.events();
    REQUIRE(ev.size() == n.steps());
    CHECK(ev.front().kind == ReductionKind::Expand);
    for (std::size_t i = 0; i < ev.size(); ++i) CHECK(ev[i].step == i);
    const auto m = suffix_minimum(n.depth_log());
    for (std::size_t i = 1; i < m.size(); ++i) CHECK(m[i - 1] <= m[i]);
    CHECK(event_to_json(ev.front())["kind"] == "expand");
  }

  TEST_CASE("frontier grows on expansion and shrinks on vanish") {
    NormalizerOptions o = at_depth(6, false);
    o.record_frontiers = true;
    for (const std::string name : {"unit_cut", "zip", "ic_case2"}) {
      Normalizer n(fixture(name), o);
      n.run();
      std::map<int, std::size_t> size{{0, 1}};
      for (const ReductionEvent& e : n.events()) {
        const std::size_t before = size.at(e.job);
        for (std::size_t i = 0; i < e.results.size(); ++i) {
          const std::size_t after = e.frontiers[i].size();
          if (e.kind == ReductionKind::Expand) CHECK(after == before + 1);
          if (e.kind == ReductionKind::Vanish) CHECK(after + 1 == before);
          if (e.kind == ReductionKind::CommuteUnary || e.kind == ReductionKind::CriticalFix) CHECK(after == before);
          size[e.results[i]] = after;
        }
      }
    }
  }

  TEST_CASE("policies") {
    for (Policy p : {Policy::Demand, Policy::First, Policy::Last, Policy::Alternate}) {
      CHECK(policy_from_name(policy_name(p)) == p);
      NormalizerOptions o = at_depth(5);
      o.policy = p;
      Normalizer n(fixture("zip"), o);
      n.run();
      REQUIRE(n.stable_at(5));
      CHECK(validate_tree(n.emit_prefix(5)).empty());
    }
    CHECK_FALSE(policy_from_name("random"));
  }

  TEST_CASE("invalid input is rejected") {
    ProofGraph g = fixture("zip");
    g.set_premises(*g.find("l1"), {*g.find("k0")});
    CHECK_THROWS(Normalizer(g, {}));
  }
}
