#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "mumall/cutelim.hpp"
#include "mumall/progress.hpp"

namespace mumall {

class SelectorExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// "policy[:choices]": choices are 0/1 digits picking among split results, a trailing '*' repeats them
struct PathSelector {
  Policy policy = Policy::Demand;
  std::vector<int> choices{0};
  bool cyclic = true;
  std::size_t used = 0;

  static PathSelector parse(const std::string& text);
  int next();
  std::string str() const;
};

struct FrontierPath {
  std::vector<int> jobs;               // multicut followed after each step
  std::vector<std::size_t> events;     // indices of the events on the path
  std::vector<Frontier> frontiers;     // frontiers[0] is the initial one
  bool alive = true;                   // the followed multicut is still active
  bool proper = false;                 // it moved during the second half of the window
};

// events must carry frontiers
FrontierPath frontier_evolution(const std::vector<ReductionEvent>& events, PathSelector& sel);

using Covering = std::set<Position>;
Covering covering(const FrontierPath& p);

// retained nodes and the premise links between them that branches may use
struct Subgraph {
  std::set<std::size_t> nodes;
  std::set<Step> edges;
  bool has(const Step& s) const { return edges.count(s) > 0; }
};
Subgraph induced_subgraph(const ProofGraph& g, const std::set<std::size_t>& nodes);
// a link is kept when some covered position crosses it
Subgraph covering_subgraph(const ProofGraph& g, const Covering& c);
std::vector<std::string> subgraph_ids(const ProofGraph& g, const Subgraph& h);

struct CoveringRun {
  std::size_t events = 0;
  RunStatus status = RunStatus::Running;
  FrontierPath path;
  Covering cover;
  Subgraph nodes;
};
// normalises g without identity wrapping for `steps` events and follows the selected path
CoveringRun run_covering(const ProofGraph& g, std::size_t steps, const std::string& selector);

// node ids, or a JSON list of them, or a comma separated list
Subgraph parse_subgraph(const ProofGraph& g, const nlohmann::json& ids);
Subgraph parse_subgraph(const ProofGraph& g, const std::string& text);
Subgraph whole_graph(const ProofGraph& g);

// lassos whose steps stay inside h, up to |stem| + |loop| <= bound, canonical and sorted
std::vector<Lasso> subgraph_lassos(const ProofGraph& g, const Subgraph& h, std::size_t bound,
                                   std::size_t limit = 200000);

// first step where b and c take different premises
std::optional<std::size_t> meet(const Lasso& b, const Lasso& c);
bool check_coherence(const TraceContext& ctx, const Lasso& b, const Lasso& c, const OmegaWord& tau);

// some branch c of h with b ⌢_tau c at cut step t: c leaves through the other premise and bears tau⊥
std::optional<Lasso> find_partner(const TraceContext& ctx, const Subgraph& h, const Lasso& b, std::size_t t,
                                  const OmegaWord& tau);

struct IcViolation {
  Lasso branch;
  std::size_t cut_step;
  OmegaWord thread;
};

struct IcReport {
  std::size_t lassos = 0;
  std::size_t internal_threads = 0;
  std::vector<IcViolation> violations;
  bool ok() const { return violations.empty(); }
};

IcReport verify_ic_candidate(const TraceContext& ctx, const Subgraph& h, std::size_t bound);
nlohmann::json ic_report_to_json(const TraceContext& ctx, const IcReport& r, std::size_t bound);

struct ExternalResult {
  bool ok = true;
  std::optional<Lasso> witness;  // branch bearing a good external thread
  std::vector<Lasso> bad_set;    // IC set of lassos without one, when not ok
};

ExternalResult external_progressivity_witness(const TraceContext& ctx, const Subgraph& h, std::size_t bound);

}  // namespace mumall
