// One line per acceptance criterion; exit status 1 if any line fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "mumall/closure.hpp"
#include "mumall/cutelim.hpp"
#include "mumall/icsets.hpp"
#include "mumall/progress.hpp"
#include "mumall/random.hpp"
#include "support.hpp"

using namespace mumall;
using mumall::testing::fixture;

namespace {

// pinned thresholds
constexpr int kRandomIdentities = 50;
constexpr int kOracleGraphs = 200;
constexpr std::size_t kOracleNodes = 8;
constexpr double kOracleSeconds = 120.0;
constexpr double kOracleFeasible = 2e5;  // lassos the oracle may enumerate per graph
constexpr int kLimitDepth = 10;
constexpr std::size_t kLimitEvents = 100000;
constexpr int kLimitRandom = 150;
constexpr int kProductiveDepth = 8;
constexpr int kThreads = 500;
constexpr int kLawCases = 1000;
constexpr int kClosureCases = 200;
constexpr int kTieGraphs = 100;
constexpr std::size_t kCoveringEvents = 600;
constexpr std::size_t kCoveringMinEvents = 500;
constexpr std::size_t kIcBound = 20;
constexpr int kCutFreeGraphs = 100;
constexpr double kIcFeasible = 2e4;
constexpr int kTrees = 300;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome fixture_fidelity() {
  int n = 0;
  for (const auto& name : mumall::testing::all_fixtures()) {
    if (!validate_local(fixture(name)).empty()) return {false, name + " has defects"};
    ++n;
  }
  for (const auto& f : mumall::testing::identity_formulas()) {
    if (!validate_local(identity_proof(parse_formula(f))).empty()) return {false, "identity of " + f + " has defects"};
    ++n;
  }
  return {true, std::to_string(n) + " derivations locally valid"};
}

Outcome verdicts() {
  if (check_progressivity(fixture("fig_left")).progressing) return {false, "left derivation progressing"};
  if (!check_progressivity(fixture("fig_centre_nu")).progressing) return {false, "centre nu not progressing"};
  if (check_progressivity(fixture("fig_centre_mu")).progressing) return {false, "centre mu progressing"};
  if (check_progressivity(fixture("section3")).progressing) return {false, "two-loop example progressing"};
  Rng rng(0);
  for (int i = 0; i < kRandomIdentities; ++i) {
    const Formula f = random_formula(rng, 5);
    if (!check_progressivity(identity_proof(f)).progressing) return {false, "identity of " + render(f) + " not progressing"};
  }
  return {true, "4 figure verdicts, " + std::to_string(kRandomIdentities) + " random identities progressing"};
}

Outcome oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(0);
  GraphGenOptions o;
  o.max_nodes = kOracleNodes;
  o.allow_cut = true;
  int checked = 0, skipped = 0, disagreements = 0, progressing = 0;
  while (checked < kOracleGraphs) {
    const ProofGraph g = random_graph(rng, o);
    const std::size_t bound = g.size() * g.max_sequent_length() * 2 + 2;
    if (count_oracle_lassos(g, bound) > kOracleFeasible) {
      ++skipped;
      continue;
    }
    const TraceContext ctx(g);
    const bool v = check_progressivity(ctx).progressing;
    progressing += v;
    if (v != brute_force_progressivity(ctx, bound).progressing) ++disagreements;
    ++checked;
  }
  const double s = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf, "%d graphs (%d progressing, %d skipped as infeasible), %d disagreements, %.1fs", checked,
                progressing, skipped, disagreements, s);
  return {disagreements == 0 && s <= kOracleSeconds, buf};
}

Outcome identity_limit() {
  std::vector<std::pair<std::string, ProofGraph>> inputs;
  for (const auto& name : mumall::testing::all_fixtures()) {
    ProofGraph g = fixture(name);
    if (!g.has_cut() && check_progressivity(g).progressing) inputs.emplace_back(name, std::move(g));
  }
  for (const auto& f : mumall::testing::identity_formulas()) inputs.emplace_back("id " + f, identity_proof(parse_formula(f)));
  Rng rng(4);
  int with_exch = 0;
  for (int i = 0; i < kLimitRandom;) {
    ProofGraph g = random_graph(rng);
    if (!check_progressivity(g).progressing) continue;
    with_exch += std::any_of(g.nodes().begin(), g.nodes().end(),
                             [](const ProofNode& n) { return n.rule.name == RuleName::Exch; });
    inputs.emplace_back("random " + std::to_string(i++), std::move(g));
  }
  std::size_t worst = 0;
  for (const auto& [name, d] : inputs) {
    NormalizerOptions o;
    o.budget = kLimitEvents;
    o.target_depth = kLimitDepth;
    Normalizer n(d, o);
    n.run();
    if (!n.stable_at(kLimitDepth)) return {false, name + " not stable at depth 10"};
    if (n.emit_prefix(kLimitDepth) != unfold_to_depth(d, kLimitDepth)) return {false, name + " prefix differs"};
    worst = std::max(worst, n.steps());
  }
  return {true, std::to_string(inputs.size()) + " cut-free progressing derivations (" + std::to_string(with_exch) +
                    " with exch), prefix = unfolding, max " + std::to_string(worst) + " events"};
}

Outcome productivity() {
  std::string detail;
  for (const auto& name : mumall::testing::progressing_cut_fixtures()) {
    const ProofGraph d = fixture(name);
    if (!check_progressivity(d).progressing) return {false, name + " not progressing"};
    NormalizerOptions o;
    o.target_depth = 2 * kProductiveDepth;
    Normalizer n(d, o);
    const RunStatus st = n.run();
    for (int depth = 0; depth <= kProductiveDepth; ++depth) {
      if (!n.stable_at(depth)) return {false, name + " not stable at depth " + std::to_string(depth)};
      const TreeNode t = n.emit_prefix(depth);
      if (contains_cut(t) || !validate_tree(t).empty()) return {false, name + " bad prefix at depth " + std::to_string(depth)};
    }
    const auto m = suffix_minimum(n.depth_log());
    const int best = m.empty() ? 0 : *std::max_element(m.begin(), m.end());
    if (st != RunStatus::Terminated && best <= kProductiveDepth)
      return {false, name + " suffix minimum stays at " + std::to_string(best)};
    detail += name + (st == RunStatus::Terminated ? "=terminated " : "=" + std::to_string(best) + " ");
  }
  return {true, "stable at depths 0..8; suffix-min reached " + detail};
}

Outcome duality() {
  Rng rng(0);
  int made = 0, exceptions = 0, good = 0;
  while (made < kThreads) {
    const Formula f = random_formula(rng, 5);
    const auto w = random_thread(rng, f);
    if (!w) continue;
    const FlClosure c = FlClosure::compute({f, negate(f)});
    const bool a = classify_word(c, *w).good;
    const bool b = classify_word(c, w->dual()).good;
    good += a;
    if (a == b) ++exceptions;
    ++made;
  }
  return {exceptions == 0, std::to_string(made) + " threads (" + std::to_string(good) + " good), " +
                               std::to_string(exceptions) + " exceptions"};
}

Outcome laws() {
  Rng rng(0);
  for (int i = 0; i < kLawCases; ++i) {
    const Formula f = random_formula(rng, 7);
    if (negate(negate(f)) != f) return {false, "involution fails on " + render(f)};
  }
  for (int i = 0; i < kLawCases; ++i) {
    const Formula phi = random_preformula(rng, 5, "P");
    const Formula psi = random_formula(rng, 3);
    if (negate(substitute(phi, "P", psi)) != substitute(negate(phi), "P", negate(psi)))
      return {false, "substitution fails on " + render(phi)};
  }
  for (int i = 0; i < kClosureCases; ++i) {
    const FlClosure c = FlClosure::compute({random_formula(rng, 6)});
    const FlClosure again = FlClosure::compute(c.formulas());
    if (again.size() != c.size()) return {false, "closure not idempotent"};
    for (const Formula& g : again.formulas())
      if (!c.contains(g)) return {false, "closure not idempotent"};
  }
  int progressing = 0;
  for (int i = 0; i < kTieGraphs; ++i) {
    const ProofGraph g = random_graph(rng);
    const bool a = check_progressivity(g, TieBreak::Lexicographic).progressing;
    if (a != check_progressivity(g, TieBreak::ReverseLexicographic).progressing) return {false, "tie-break changes a verdict"};
    progressing += a;
  }
  return {true, "1000 involutions, 1000 substitutions, 200 closures, 100 graphs under two priority extensions (" +
                    std::to_string(progressing) + " progressing)"};
}

Outcome covering_consistency() {
  int runs = 0;
  for (const auto& name : mumall::testing::all_fixtures()) {
    const ProofGraph g = fixture(name);
    if (!g.has_cut()) continue;
    const TraceContext ctx(g);
    for (const char* sel : {"demand", "first", "last", "alternate"}) {
      const CoveringRun r = run_covering(g, kCoveringEvents, sel);
      if (r.events < kCoveringMinEvents || !r.path.proper) continue;
      const IcReport rep = verify_ic_candidate(ctx, r.nodes, kIcBound);
      if (!rep.ok()) return {false, name + " / " + sel + ": " + std::to_string(rep.violations.size()) + " violations"};
      ++runs;
    }
  }
  return {runs > 0, std::to_string(runs) + " proper runs of 600 events, no violation up to bound 20"};
}

Outcome cut_free_equivalence() {
  Rng rng(0);
  int checked = 0, skipped = 0, progressing = 0;
  while (checked < kCutFreeGraphs) {
    const ProofGraph g = random_graph(rng);
    const std::size_t bound = completeness_bound(g);
    if (count_oracle_lassos(g, bound) > kIcFeasible) {
      ++skipped;
      continue;
    }
    const TraceContext ctx(g);
    const bool p = check_progressivity(ctx).progressing;
    const bool e = external_progressivity_witness(ctx, whole_graph(g), bound).ok;
    if (p != e) return {false, "graph " + std::to_string(checked) + ": progressing=" + std::to_string(p)};
    progressing += p;
    ++checked;
  }
  return {true, std::to_string(checked) + " cut-free graphs (" + std::to_string(progressing) + " progressing, " +
                    std::to_string(skipped) + " skipped as infeasible) agree"};
}

Outcome single_step() {
  Rng rng(0);
  std::set<ReductionKind> kinds;
  int reducts = 0;
  for (int i = 0; i < kTrees; ++i) {
    const TreeNode t = random_cut_tree(rng, 6);
    for (const Position& p : mumall::testing::cut_positions(t)) {
      for (const Reduct& r : reduce_step(t, p)) {
        ++reducts;
        kinds.insert(r.kind);
        if (r.tree.sequent != t.sequent) return {false, std::string(reduction_name(r.kind)) + " changes the conclusion"};
        if (!validate_tree(r.tree).empty()) return {false, std::string(reduction_name(r.kind)) + " breaks validity"};
        if (r.kind == ReductionKind::CriticalUnit && count_rule(r.tree, RuleName::Cut) + 1 != count_rule(t, RuleName::Cut))
          return {false, "unit step leaves a cut"};
      }
    }
  }
  std::string names;
  for (ReductionKind k : kinds) names += std::string(" ") + reduction_name(k);
  return {kinds.size() == 7, std::to_string(reducts) + " reducts over 300 trees; kinds:" + names};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 fixture fidelity", fixture_fidelity},
      {"2 progressivity verdicts", verdicts},
      {"3 oracle equivalence", oracle_equivalence},
      {"4 identity precomposition limit", identity_limit},
      {"5 productivity on progressing inputs", productivity},
      {"6 duality law", duality},
      {"7 algebraic laws", laws},
      {"8 covering/IC consistency", covering_consistency},
      {"9 cut-free equivalence", cut_free_equivalence},
      {"10 single-step soundness", single_step},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
