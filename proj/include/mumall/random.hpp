#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "mumall/closure.hpp"
#include "mumall/progress.hpp"
#include "mumall/proof.hpp"

namespace mumall {

using Rng = std::mt19937_64;

// closed formula with at most `size` connectives; fixpoint bodies usually use their variable
Formula random_formula(Rng& rng, int size);
// may contain the free variable `var`
Formula random_preformula(Rng& rng, int size, const std::string& var);

struct GraphGenOptions {
  std::size_t max_nodes = 8;
  std::size_t max_sequent = 3;
  int formula_size = 4;
  bool allow_cut = false;
  int attempts = 2000;
};

// locally valid regular proof built top-down; back-edges go to any node with the same sequent
std::optional<ProofGraph> try_random_graph(Rng& rng, const GraphGenOptions& opts);
ProofGraph random_graph(Rng& rng, const GraphGenOptions& opts = {});

// finite proof built bottom-up from axioms, containing at least one cut
TreeNode random_cut_tree(Rng& rng, int operations = 6);

// eventually periodic FL path from `start`; none if the walk reaches a unit or free variable
std::optional<OmegaWord> random_thread(Rng& rng, const Formula& start, std::size_t max_len = 24);

}  // namespace mumall
