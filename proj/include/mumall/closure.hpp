#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include "mumall/formula.hpp"

namespace mumall {

// Fischer-Ladner successors: immediate subformulas, or the unfolding of a fixpoint.
std::vector<Formula> fl_successors(const Formula& f);

enum class TieBreak { Lexicographic, ReverseLexicographic };

enum class Parity { Even, Odd };

class FlClosure {
 public:
  static FlClosure compute(const std::vector<Formula>& seeds, TieBreak tie = TieBreak::Lexicographic);

  std::size_t size() const { return formulas_.size(); }
  const std::vector<Formula>& formulas() const { return formulas_; }
  bool contains(const Formula& f) const { return index_.count(f) != 0; }
  std::optional<std::size_t> index_of(const Formula& f) const;

  // a ⪯ b : a is reachable from b
  bool leq(const Formula& a, const Formula& b) const;
  bool equivalent(const Formula& a, const Formula& b) const;
  bool strictly_below(const Formula& a, const Formula& b) const;
  std::size_t class_of(const Formula& f) const;
  std::size_t class_count() const { return class_count_; }

  // psi < phi in the priority preorder: psi strictly FL-below phi, or equivalent and phi ⊂ psi
  bool lower_priority(const Formula& psi, const Formula& phi) const;

  // fixpoints ordered from highest priority to lowest
  const std::vector<Formula>& fixpoints_by_priority() const { return order_; }
  int rank(const Formula& fixpoint) const;
  Parity parity(const Formula& fixpoint) const;

 private:
  std::size_t need(const Formula& f) const;

  std::vector<Formula> formulas_;
  std::unordered_map<Formula, std::size_t, FormulaHash> index_;
  std::vector<std::vector<bool>> reach_;  // reach_[a][b]: b reachable from a
  std::vector<std::size_t> scc_;
  std::size_t class_count_ = 0;
  std::vector<Formula> order_;
  std::unordered_map<Formula, int, FormulaHash> rank_;
};

}  // namespace mumall
