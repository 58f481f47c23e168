#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "mumall/proof.hpp"

namespace mumall {

enum class ReductionKind {
  Expand,
  CommuteUnary,
  CommuteBinary,
  CommuteWith,
  CriticalUnit,
  CriticalFix,
  CriticalTensorPar,
  CriticalPlusWith,
  Vanish,
};

const char* reduction_name(ReductionKind k);

class NeedsMoreDepth : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Reduct {
  ReductionKind kind;
  TreeNode tree;
};

// all one-step reducts of the cut at `cut_pos`; `choice` keeps only the reduct with that index
std::vector<Reduct> reduce_step(const TreeNode& t, const Position& cut_pos, std::optional<std::size_t> choice = {});

// cut of a (formula at ai) against b (its dual at bi), with exch chains moving both into place
TreeNode make_cut(const TreeNode& a, int ai, const TreeNode& b, int bi);
// exch chain below t so that it concludes `target`, a permutation of its conclusion
TreeNode permute_to(const TreeNode& t, const Sequent& target);

// which ready premise a job serves first when none is demanded by the cut structure
enum class Policy { Demand, First, Last, Alternate };
const char* policy_name(Policy p);
std::optional<Policy> policy_from_name(std::string_view s);

struct NormalizerOptions {
  std::size_t budget = 100000;
  std::optional<int> target_depth;
  bool auto_wrap = true;
  Policy policy = Policy::Demand;
  bool record_frontiers = false;
};

using Frontier = std::vector<Position>;

struct ReductionEvent {
  std::size_t step;
  ReductionKind kind;
  int job;
  Position location;
  int depth;
  int premise;
  std::vector<int> results;
  std::vector<Frontier> frontiers;  // one per result, when recorded
  std::optional<Rule> emitted;
};

nlohmann::json event_to_json(const ReductionEvent& e);

enum class RunStatus { Running, Terminated, Stable, BudgetExhausted, Blocked };
const char* status_name(RunStatus s);

class NotStable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// multicut normaliser: one event per call to step()
class Normalizer {
 public:
  Normalizer(const ProofGraph& d, NormalizerOptions opts);
  static Normalizer resume(const nlohmann::json& checkpoint);

  // false once the run has stopped
  bool step();
  RunStatus run();
  RunStatus status() const { return status_; }

  const ProofGraph& source() const { return source_; }
  const NormalizerOptions& options() const { return opts_; }
  const std::vector<ReductionEvent>& events() const { return events_; }
  const std::vector<int>& depth_log() const { return depth_log_; }
  std::size_t steps() const { return steps_; }
  std::size_t star_violations() const { return star_violations_; }
  std::size_t active_jobs() const;
  Frontier initial_frontier() const { return {Position{}}; }

  // cut-free prefix up to depth d; throws NotStable while a job sits at depth <= d
  TreeNode emit_prefix(int d) const;
  bool stable_at(int d) const;
  // smallest depth of a pending job, if any
  std::optional<int> min_pending_depth() const;

  nlohmann::json checkpoint() const;
  // new budget (total events) and target depth; parked jobs become runnable again
  void extend(std::size_t budget, std::optional<int> target_depth);
  void keep_events(bool keep) { keep_events_ = keep; }

  struct Link {
    bool external = true;
    int partner = -1;  // premise uid
    int index = -1;
  };
  struct Premise {
    int uid;
    std::size_t node;
    Position source;
    std::vector<Link> links;
  };
  struct Occ {
    int uid;
    int index;
    friend bool operator==(const Occ& a, const Occ& b) { return a.uid == b.uid && a.index == b.index; }
    friend bool operator<(const Occ& a, const Occ& b) { return a.uid != b.uid ? a.uid < b.uid : a.index < b.index; }
  };
  struct Job {
    int id;
    std::vector<Premise> premises;
    std::vector<Occ> conclusion;
    std::size_t emit;
    int depth;
    std::optional<int> continuation;  // premise uid owed a positive rule
    bool toggle = false;
  };
  struct EmitNode {
    Sequent sequent;
    std::optional<Rule> rule;  // none while a job still owns the node
    std::vector<std::size_t> children;
    Position pos;
  };
  // every active job's conclusion matches its pending emitted node
  bool consistent() const;
  const std::vector<EmitNode>& emitted() const { return pool_; }
  const std::vector<Job>& parked() const { return parked_; }

 private:
  struct Advanced {
    std::vector<int> uids;
    std::vector<std::vector<int>> principal_to;
  };

  Normalizer() = default;
  void init();
  bool process(Job job);
  Advanced advance(Job& job, std::size_t pi, const std::vector<int>& slots);
  std::vector<std::size_t> emit(std::size_t at, const Rule& r);
  Advanced relay_exch(Job& job, std::size_t pi, ReductionEvent& ev);
  std::vector<Job> commute(Job job, std::size_t pi, ReductionEvent& ev);
  std::vector<Job> critical(Job job, std::size_t pi, std::size_t qi, ReductionEvent& ev);
  std::size_t find(const Job& job, int uid) const;
  Sequent conclusion_sequent(const Job& j) const;
  Frontier frontier(const Job& j) const;
  std::vector<const Job*> pending() const;

  ProofGraph source_;
  std::vector<RuleApplication> apps_;
  std::set<std::size_t> wrapper_;  // exch/cut nodes added by identity wrapping
  NormalizerOptions opts_;
  std::vector<EmitNode> pool_;
  std::deque<Job> queue_;
  std::vector<Job> parked_;
  std::vector<Job> blocked_;
  std::vector<ReductionEvent> events_;
  std::vector<int> depth_log_;
  std::size_t steps_ = 0;
  std::size_t star_violations_ = 0;
  int next_job_ = 0;
  int next_uid_ = 0;
  bool keep_events_ = true;
  RunStatus status_ = RunStatus::Running;
};

// running minimum of the depth log from each index to the end
std::vector<int> suffix_minimum(const std::vector<int>& depths);

}  // namespace mumall
