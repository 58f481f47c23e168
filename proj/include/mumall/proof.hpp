#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mumall/formula.hpp"

namespace mumall {

// Open marks an unexplored leaf of a finite prefix.
enum class RuleName { One, Bot, Top, Tensor, Par, Plus0, Plus1, With, Mu, Nu, Cut, Exch, Open };

const char* rule_name(RuleName r);
std::optional<RuleName> rule_from_name(std::string_view s);

struct Rule {
  RuleName name = RuleName::Open;
  int principal = -1;  // logical rules
  int left_len = -1;   // tensor, cut
  std::optional<Formula> cut_formula;
  int index = -1;      // exch swaps index and index+1

  static Rule make(RuleName n, int p, int left = -1) {
    Rule r;
    r.name = n;
    r.principal = p;
    r.left_len = left;
    return r;
  }
  static Rule one() { return make(RuleName::One, 0); }
  static Rule top(int p) { return make(RuleName::Top, p); }
  static Rule bot(int p) { return make(RuleName::Bot, p); }
  static Rule par(int p) { return make(RuleName::Par, p); }
  static Rule tensor(int p, int left) { return make(RuleName::Tensor, p, left); }
  static Rule plus(int p, int side) { return make(side == 0 ? RuleName::Plus0 : RuleName::Plus1, p); }
  static Rule with(int p) { return make(RuleName::With, p); }
  static Rule mu(int p) { return make(RuleName::Mu, p); }
  static Rule nu(int p) { return make(RuleName::Nu, p); }
  static Rule cut(const Formula& f, int left) {
    Rule r;
    r.name = RuleName::Cut;
    r.left_len = left;
    r.cut_formula = f;
    return r;
  }
  static Rule exch(int i) {
    Rule r;
    r.name = RuleName::Exch;
    r.index = i;
    return r;
  }
  static Rule open() { return {}; }

  bool logical() const;
  friend bool operator==(const Rule& a, const Rule& b);
  friend bool operator!=(const Rule& a, const Rule& b) { return !(a == b); }
};

std::string describe(const Rule& r);

enum class StepEvent { None, Steps, Unfold };

// one ancestry link from a conclusion occurrence to a premise occurrence
struct Ancestor {
  int from;
  int to;
  StepEvent event;
};

struct RuleApplication {
  std::vector<Sequent> premises;
  std::vector<std::vector<Ancestor>> ancestry;  // per premise slot
  int principal = -1;                            // -1 for cut, exch, open
};

class RuleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// premise sequents and ancestry for `rule` applied with conclusion `s`
RuleApplication apply_rule(const Sequent& s, const Rule& rule);

struct ProofNode {
  std::string id;
  Sequent sequent;
  Rule rule;
  std::vector<std::size_t> premises;
};

class ProofGraph {
 public:
  std::size_t add_node(std::string id, Sequent sequent, Rule rule);
  void set_premises(std::size_t node, std::vector<std::size_t> premises);
  void set_root(std::size_t node) { root_ = node; }

  std::size_t root() const { return root_; }
  std::size_t size() const { return nodes_.size(); }
  const ProofNode& node(std::size_t i) const { return nodes_.at(i); }
  ProofNode& node(std::size_t i) { return nodes_.at(i); }
  const std::vector<ProofNode>& nodes() const { return nodes_; }
  std::optional<std::size_t> find(const std::string& id) const;
  const Sequent& conclusion() const { return nodes_.at(root_).sequent; }
  std::size_t max_sequent_length() const;
  bool has_cut() const;

 private:
  std::vector<ProofNode> nodes_;
  std::unordered_map<std::string, std::size_t> ids_;
  std::size_t root_ = 0;
};

struct Defect {
  std::string where;
  std::string message;
};

std::vector<Defect> validate_local(const ProofGraph& g);

using Position = std::vector<int>;
std::string position_string(const Position& p);

// rule empty means an open leaf
struct TreeNode {
  Sequent sequent;
  std::optional<Rule> rule;
  std::vector<TreeNode> children;

  bool open() const { return !rule.has_value(); }
  friend bool operator==(const TreeNode& a, const TreeNode& b);
  friend bool operator!=(const TreeNode& a, const TreeNode& b) { return !(a == b); }
};

TreeNode unfold_to_depth(const ProofGraph& g, int depth);
std::vector<Defect> validate_tree(const TreeNode& t);
const TreeNode& subtree(const TreeNode& t, const Position& p);
TreeNode& subtree(TreeNode& t, const Position& p);
bool contains_cut(const TreeNode& t);
std::size_t count_rule(const TreeNode& t, RuleName r);
int tree_depth(const TreeNode& t);
// trees as graphs with one node per position, ids "t", "t.0", ...
ProofGraph tree_to_graph(const TreeNode& t);

ProofGraph identity_proof(const Formula& phi);

struct CutPiece {
  ProofGraph proof;
  Formula formula;
};
// d concludes Gamma, phi_1..phi_n; piece i concludes phi_i^perp, Delta_i.
// Result concludes Gamma, Delta_1..Delta_n.
ProofGraph compose_cut(const ProofGraph& d, const std::vector<CutPiece>& cuts);
ProofGraph wrap_with_identities(const ProofGraph& d);

// the graph node reached by following premise slots from the root
std::size_t node_at(const ProofGraph& g, const Position& p);

}  // namespace mumall
