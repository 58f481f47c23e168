#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "mumall/closure.hpp"
#include "mumall/proof.hpp"

namespace mumall {

constexpr int kNoRank = 1 << 20;

// an edge of the graph: premise `slot` of `node`
struct Step {
  std::size_t node;
  int slot;
  friend bool operator==(const Step& a, const Step& b) { return a.node == b.node && a.slot == b.slot; }
  friend bool operator<(const Step& a, const Step& b) {
    return a.node != b.node ? a.node < b.node : a.slot < b.slot;
  }
};

// stem from the root, then loop repeated forever
struct Lasso {
  std::vector<Step> stem;
  std::vector<Step> loop;
  std::size_t size() const { return stem.size() + loop.size(); }
  const Step& at(std::size_t t) const;  // step t of the unrolled branch
  friend bool operator==(const Lasso& a, const Lasso& b) { return a.stem == b.stem && a.loop == b.loop; }
  friend bool operator<(const Lasso& a, const Lasso& b);
};

// shortest stem, primitive loop
Lasso canonical(Lasso l);

struct RankedAncestor {
  int from;
  int to;
  StepEvent event;
  int rank;  // kNoRank unless event is Unfold
};

class WeakThreadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TraceContext {
 public:
  explicit TraceContext(ProofGraph g, TieBreak tie = TieBreak::Lexicographic);

  const ProofGraph& graph() const { return g_; }
  const FlClosure& closure() const { return closure_; }
  const std::vector<RankedAncestor>& relation(const Step& s) const { return rel_[s.node][s.slot]; }
  std::size_t target(const Step& s) const { return g_.node(s.node).premises[s.slot]; }
  const Formula& formula(std::size_t node, int k) const { return g_.node(node).sequent[k]; }
  // throws std::invalid_argument if the steps do not chain up
  void check(const Lasso& l) const;
  std::string describe(const Lasso& l) const;

 private:
  ProofGraph g_;
  FlClosure closure_;
  std::vector<std::vector<std::vector<RankedAncestor>>> rel_;
};

// step relation of every edge; rank of unfolded fixpoints from the closure of all formulas in g
std::vector<std::vector<std::vector<RankedAncestor>>> step_relations(const ProofGraph& g, const FlClosure& c);

struct ThreadClass {
  bool good;
  int min_rank;
};

// track has loop.size()+1 occurrence indices along the loop; first and last coincide
ThreadClass classify_thread(const TraceContext& ctx, const Lasso& l, const std::vector<int>& track);

struct ThreadWitness {
  Lasso lasso;
  std::vector<int> track;
  int min_rank;
};

struct Verdict {
  bool progressing = true;
  std::vector<ThreadWitness> witnesses;
  std::optional<Lasso> counterexample;
};

Verdict check_progressivity(const TraceContext& ctx);
Verdict check_progressivity(const ProofGraph& g, TieBreak tie = TieBreak::Lexicographic);

// exhaustive trace search on one lasso
bool lasso_has_good_thread(const TraceContext& ctx, const Lasso& l);
// same, restricted to traces starting in the conclusion
bool lasso_has_good_external_thread(const TraceContext& ctx, const Lasso& l);

struct OracleResult {
  bool progressing = true;
  std::optional<Lasso> counterexample;
  std::size_t lassos_checked = 0;
};

class OracleLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::size_t completeness_bound(const ProofGraph& g);
// enumerates every lasso with |stem| + |loop| <= bound
OracleResult brute_force_progressivity(const TraceContext& ctx, std::size_t bound, std::size_t limit = 5'000'000);
OracleResult brute_force_progressivity(const ProofGraph& g, std::size_t bound);
// number of lassos the oracle would visit
double count_oracle_lassos(const ProofGraph& g, std::size_t bound);

// ultimately periodic formula sequence
struct OmegaWord {
  std::vector<Formula> stem;
  std::vector<Formula> cycle;

  void normalize();
  OmegaWord dual() const;
  std::string str() const;
  friend bool operator==(const OmegaWord& a, const OmegaWord& b) { return a.stem == b.stem && a.cycle == b.cycle; }
};

// ultimately periodic trace over a lasso; states are (position, occurrence)
struct LassoTrace {
  int origin_position;
  int origin_index;
  bool external;
  std::vector<std::pair<int, int>> states;
  std::size_t cycle_start;
  bool thread;  // infinitely many principal steps
  OmegaWord word;  // formulas at principal steps
};

std::size_t next_position(const Lasso& l, std::size_t t);

// traces starting at (position, index), one per simple product path closing a cycle
std::vector<LassoTrace> traces_from(const TraceContext& ctx, const Lasso& l, int position, int index,
                                    std::size_t limit = 4096);
std::vector<LassoTrace> external_traces_only(const TraceContext& ctx, const Lasso& l);
// traces starting at the cut formula occurrences met along the lasso
std::vector<LassoTrace> internal_traces(const TraceContext& ctx, const Lasso& l);
// cut formula occurrence entered at step t, if step t leaves a cut node
std::optional<int> cut_occurrence(const TraceContext& ctx, const Step& s);
// is there a trace from (position, index) on l whose thread is w
bool bears(const TraceContext& ctx, const Lasso& l, int position, int index, const OmegaWord& w);
// thread classification on the formula level: minimal rank among fixpoints of the cycle
ThreadClass classify_word(const FlClosure& c, const OmegaWord& w);

enum class OriginKind { External, Internal };
// follows descendants down a finite branch prefix from occurrence (position, index)
OriginKind trace_origin(const ProofGraph& g, const std::vector<Step>& path, std::size_t position, int index);

nlohmann::json lasso_to_json(const ProofGraph& g, const Lasso& l);
Lasso lasso_from_json(const ProofGraph& g, const nlohmann::json& j);
nlohmann::json verdict_to_json(const TraceContext& ctx, const Verdict& v);

}  // namespace mumall
