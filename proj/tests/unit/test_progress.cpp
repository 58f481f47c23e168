#include "doctest.h"
#include "mumall/progress.hpp"
#include "mumall/random.hpp"
#include "support.hpp"

using namespace mumall;
using mumall::testing::fixture;

TEST_SUITE("progress") {
  TEST_CASE("fixture verdicts") {
    CHECK_FALSE(check_progressivity(fixture("fig_left")).progressing);
    CHECK(check_progressivity(fixture("fig_centre_nu")).progressing);
    CHECK_FALSE(check_progressivity(fixture("fig_centre_mu")).progressing);
    CHECK_FALSE(check_progressivity(fixture("section3")).progressing);
    CHECK(check_progressivity(fixture("zip")).progressing);
  }

  TEST_CASE("the counterexample is a lasso with no good thread") {
    for (const std::string name : {"fig_left", "fig_centre_mu", "section3", "ic_case1", "ic_case3"}) {
      CAPTURE(name);
      const TraceContext ctx(fixture(name));
      const Verdict v = check_progressivity(ctx);
      REQUIRE_FALSE(v.progressing);
      REQUIRE(v.counterexample);
      ctx.check(*v.counterexample);
      CHECK_FALSE(lasso_has_good_thread(ctx, *v.counterexample));
    }
  }

  TEST_CASE("left derivation fails on the mu loop") {
    const TraceContext ctx(fixture("fig_left"));
    const Verdict v = check_progressivity(ctx);
    REQUIRE(v.counterexample);
    CHECK(ctx.describe(*v.counterexample) == "r (k)^w");
  }

  TEST_CASE("witness threads are classified good") {
    const TraceContext ctx(fixture("zip"));
    const Verdict v = check_progressivity(ctx);
    REQUIRE_FALSE(v.witnesses.empty());
    for (const ThreadWitness& w : v.witnesses) {
      CHECK(w.min_rank % 2 == 0);
      CHECK(classify_thread(ctx, w.lasso, w.track).good);
    }
  }

  TEST_CASE("checker agrees with the oracle on fixtures and identities") {
    for (const auto& name : mumall::testing::all_fixtures()) {
      CAPTURE(name);
      const ProofGraph g = fixture(name);
      CHECK(check_progressivity(g).progressing == brute_force_progressivity(g, completeness_bound(g)).progressing);
    }
    for (const auto& f : mumall::testing::identity_formulas()) {
      const ProofGraph g = identity_proof(parse_formula(f));
      CAPTURE(f);
      CHECK(check_progressivity(g).progressing);
      CHECK(brute_force_progressivity(g, completeness_bound(g)).progressing);
    }
  }

  TEST_CASE("checker agrees with the oracle on random graphs") {
    Rng rng(3);
    GraphGenOptions o;
    o.allow_cut = true;
    int checked = 0;
    while (checked < 60) {
      const ProofGraph g = random_graph(rng, o);
      const std::size_t b = completeness_bound(g);
      if (count_oracle_lassos(g, b) > 2e5) continue;
      ++checked;
      CHECK(check_progressivity(g).progressing == brute_force_progressivity(g, b).progressing);
    }
  }

  TEST_CASE("canonical lassos") {
    const ProofGraph g = fixture("zip");
    const std::size_t r = *g.find("r"), l0 = *g.find("l0"), l1 = *g.find("l1");
    const Lasso unrolled{{{r, 0}, {l0, 0}, {l1, 0}}, {{l0, 0}, {l1, 0}, {l0, 0}, {l1, 0}}};
    const Lasso c = canonical(unrolled);
    CHECK(c.stem.size() == 1);
    CHECK(c.loop.size() == 2);
    for (std::size_t t = 0; t < 12; ++t) CHECK(c.at(t) == unrolled.at(t));
  }

  TEST_CASE("dual words flip the verdict") {
    const FlClosure c = FlClosure::compute({parse_formula("nu X. X"), parse_formula("mu X. X")});
    OmegaWord w;
    w.cycle = {parse_formula("nu X. X")};
    CHECK(classify_word(c, w).good);
    CHECK_FALSE(classify_word(c, w.dual()).good);
  }

  TEST_CASE("verdicts do not depend on the tie-break") {
    Rng rng(4);
    for (int i = 0; i < 40; ++i) {
      const ProofGraph g = random_graph(rng);
      CHECK(check_progressivity(g, TieBreak::Lexicographic).progressing ==
            check_progressivity(g, TieBreak::ReverseLexicographic).progressing);
    }
  }

  TEST_CASE("lasso JSON round trip") {
    const ProofGraph g = fixture("section3");
    const TraceContext ctx(g);
    const Verdict v = check_progressivity(ctx);
    REQUIRE(v.counterexample);
    CHECK(lasso_from_json(g, lasso_to_json(g, *v.counterexample)) == *v.counterexample);
  }

  TEST_CASE("oracle limit") {
    const ProofGraph g = identity_proof(parse_formula("nu X. (X * X)"));
    CHECK_THROWS_AS(brute_force_progressivity(TraceContext(g), 40, 1000), OracleLimit);
  }
}
