#include "doctest.h"
#include "mumall/proof_io.hpp"
#include "mumall/random.hpp"

using namespace mumall;

TEST_SUITE("random") {
  TEST_CASE("generation is deterministic in the seed") {
    Rng a(9), b(9);
    for (int i = 0; i < 20; ++i) CHECK(save_proof(random_graph(a)) == save_proof(random_graph(b)));
  }

  TEST_CASE("graphs are valid and small") {
    Rng rng(1);
    GraphGenOptions o;
    o.allow_cut = true;
    for (int i = 0; i < 100; ++i) {
      const ProofGraph g = random_graph(rng, o);
      CHECK(g.size() <= o.max_nodes);
      CHECK(g.max_sequent_length() <= o.max_sequent);
      CHECK(validate_local(g).empty());
    }
  }

  TEST_CASE("formulas are closed") {
    Rng rng(2);
    for (int i = 0; i < 200; ++i) CHECK(random_formula(rng, 6).closed());
  }

  TEST_CASE("cut trees are valid and contain a cut") {
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
      const TreeNode t = random_cut_tree(rng);
      CHECK(contains_cut(t));
      CHECK(validate_tree(t).empty());
    }
  }

  TEST_CASE("threads follow FL successors") {
    Rng rng(4);
    int made = 0;
    for (int i = 0; i < 200; ++i) {
      const Formula f = random_formula(rng, 5);
      const auto w = random_thread(rng, f);
      if (!w) continue;
      ++made;
      std::vector<Formula> seq = w->stem;
      seq.insert(seq.end(), w->cycle.begin(), w->cycle.end());
      seq.push_back(w->cycle.front());
      for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
        const auto next = fl_successors(seq[k]);
        CHECK(std::find(next.begin(), next.end(), seq[k + 1]) != next.end());
      }
    }
    CHECK(made > 20);
  }
}
