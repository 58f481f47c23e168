#include <unistd.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "mumall/cutelim.hpp"
#include "mumall/icsets.hpp"
#include "mumall/progress.hpp"
#include "mumall/proof_io.hpp"
#include "mumall/random.hpp"

using namespace mumall;
using nlohmann::json;

namespace {

enum Exit { Ok = 0, Invalid = 1, Disagreement = 2, Budget = 3 };

struct Globals {
  std::string format = "json";
  std::uint64_t seed = 0;
};

bool color_enabled() {
  const char* c = std::getenv("MUMALL_COLOR");
  return !(c && std::string(c) == "0");
}

// one line for a human on a terminal; silent when stderr is redirected
void summary(bool good, const std::string& text) {
  if (!isatty(STDERR_FILENO)) return;
  if (color_enabled())
    std::cerr << (good ? "\033[32m" : "\033[31m") << text << "\033[0m\n";
  else
    std::cerr << text << "\n";
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string graph_text(const ProofGraph& g, const Globals& gl) {
  return gl.format == "dot" ? export_dot(g) : save_proof(g).dump(2) + "\n";
}

int cmd_check(const std::string& path) {
  const ProofGraph g = load_proof_file(path);
  const auto defects = validate_local(g);
  json report{{"valid", defects.empty()}, {"nodes", g.size()}, {"defects", defects.size()}};
  std::cout << report.dump(2) << "\n";
  if (!defects.empty()) {
    json ds = json::array();
    for (const Defect& d : defects) ds.push_back({{"node", d.where}, {"message", d.message}});
    std::cerr << json{{"defects", ds}}.dump(2) << "\n";
  }
  summary(defects.empty(), defects.empty() ? "valid" : std::to_string(defects.size()) + " defect(s)");
  return defects.empty() ? Ok : Invalid;
}

int cmd_progress(const std::string& path, bool oracle, std::optional<std::size_t> bound, const std::string& tie) {
  const ProofGraph g = load_proof_file(path);
  if (const auto d = validate_local(g); !d.empty()) throw std::invalid_argument(d.front().where + ": " + d.front().message);
  const TraceContext ctx(g, tie == "reverse" ? TieBreak::ReverseLexicographic : TieBreak::Lexicographic);
  const Verdict v = check_progressivity(ctx);
  json out = verdict_to_json(ctx, v);
  int code = v.progressing ? Ok : Invalid;
  if (oracle) {
    const std::size_t b = bound.value_or(completeness_bound(g));
    const OracleResult r = brute_force_progressivity(ctx, b);
    out["oracle"] = {{"progressing", r.progressing}, {"bound", b}, {"lassosChecked", r.lassos_checked}};
    if (r.counterexample) out["oracle"]["counterexample"] = lasso_to_json(g, *r.counterexample);
    if (r.progressing != v.progressing) {
      out["disagreement"] = true;
      code = Disagreement;
    }
  }
  std::cout << out.dump(2) << "\n";
  summary(v.progressing, code == Disagreement ? "checker and oracle disagree"
                         : v.progressing       ? "progressing"
                                               : "not progressing");
  return code;
}

int cmd_id(const std::string& formula, const std::string& out, const Globals& gl) {
  const ProofGraph g = identity_proof(parse_formula(formula));
  write_text(out, graph_text(g, gl));
  return Ok;
}

struct NormalizeArgs {
  std::string proof;
  int depth = 8;
  std::size_t budget = 100000;
  bool no_wrap = false;
  std::string policy = "demand";
  std::string emit;
  std::string events;
  std::string checkpoint;
  std::string resume;
};

int cmd_normalize(const NormalizeArgs& a, const Globals& gl) {
  const auto policy = policy_from_name(a.policy);
  if (!policy) throw std::invalid_argument("unknown policy '" + a.policy + "'");
  std::optional<Normalizer> n;
  if (!a.resume.empty()) {
    std::ifstream in(a.resume);
    if (!in) throw std::runtime_error("cannot read " + a.resume);
    n.emplace(Normalizer::resume(json::parse(in)));
    n->extend(a.budget, a.depth);
  } else {
    if (a.proof.empty()) throw std::invalid_argument("a proof file or --resume is required");
    NormalizerOptions o;
    o.budget = a.budget;
    o.target_depth = a.depth;
    o.auto_wrap = !a.no_wrap;
    o.policy = *policy;
    n.emplace(load_proof_file(a.proof), o);
  }
  n->keep_events(!a.events.empty());
  const RunStatus st = n->run();

  json report{{"status", status_name(st)},
              {"steps", n->steps()},
              {"depth", a.depth},
              {"stable", n->stable_at(a.depth)},
              {"starViolations", n->star_violations()},
              {"activeJobs", n->active_jobs()}};
  if (const auto m = n->min_pending_depth()) report["minPendingDepth"] = *m;
  if (!a.events.empty()) {
    std::ofstream out(a.events);
    if (!out) throw std::runtime_error("cannot write " + a.events);
    for (const ReductionEvent& e : n->events()) out << event_to_json(e).dump() << "\n";
  }
  if (!a.checkpoint.empty()) write_text(a.checkpoint, n->checkpoint().dump() + "\n");

  int code = Ok;
  if (n->stable_at(a.depth)) {
    const TreeNode prefix = n->emit_prefix(a.depth);
    report["cutFree"] = !contains_cut(prefix);
    if (!a.emit.empty())
      write_text(a.emit, gl.format == "dot" ? export_dot(prefix) : save_proof(tree_to_graph(prefix)).dump(2) + "\n");
  } else if (st == RunStatus::BudgetExhausted) {
    report["depthLog"] = n->depth_log();
    code = Budget;
  } else {
    code = Invalid;
  }
  std::cout << report.dump(2) << "\n";
  summary(code == Ok, std::string(status_name(st)) + " after " + std::to_string(n->steps()) + " events");
  return code;
}

int cmd_ic_verify(const std::string& path, const std::string& subgraph, std::size_t bound, bool external) {
  const ProofGraph g = load_proof_file(path);
  const Subgraph h = subgraph.empty() ? whole_graph(g) : parse_subgraph(g, subgraph);
  const TraceContext ctx(g);
  const IcReport r = verify_ic_candidate(ctx, h, bound);
  json out = ic_report_to_json(ctx, r, bound);
  out["subgraph"] = subgraph_ids(g, h);
  if (external) {
    const ExternalResult e = external_progressivity_witness(ctx, h, bound);
    json x{{"ok", e.ok}};
    x["witness"] = e.witness ? lasso_to_json(g, *e.witness) : json(nullptr);
    json bad = json::array();
    for (const Lasso& l : e.bad_set) bad.push_back(lasso_to_json(g, l));
    x["badSet"] = bad;
    out["external"] = x;
  }
  std::cout << out.dump(2) << "\n";
  summary(r.ok(), r.ok() ? "no violation up to bound " + std::to_string(bound)
                         : std::to_string(r.violations.size()) + " violation(s)");
  return r.ok() ? Ok : Invalid;
}

int cmd_covering(const std::string& path, std::size_t steps, const std::vector<std::string>& paths,
                 std::size_t bound) {
  const ProofGraph g = load_proof_file(path);
  const TraceContext ctx(g);
  json all = json::array();
  bool ok = true;
  for (const std::string& sel : paths) {
    const CoveringRun r = run_covering(g, steps, sel);
    json edges = json::array();
    for (const Step& s : r.nodes.edges) edges.push_back({g.node(s.node).id, s.slot});
    json branches = json::array();
    for (const Lasso& l : subgraph_lassos(g, r.nodes, bound)) branches.push_back(lasso_to_json(g, l));
    const IcReport ic = verify_ic_candidate(ctx, r.nodes, bound);
    ok = ok && ic.ok();
    all.push_back({{"path", sel},
                   {"events", r.events},
                   {"status", status_name(r.status)},
                   {"proper", r.path.proper},
                   {"alive", r.path.alive},
                   {"pathEvents", r.path.events.size()},
                   {"positions", r.cover.size()},
                   {"nodes", subgraph_ids(g, r.nodes)},
                   {"edges", edges},
                   {"branches", branches},
                   {"ic", ic_report_to_json(ctx, ic, bound)}});
  }
  std::cout << (all.size() == 1 ? all[0] : all).dump(2) << "\n";
  summary(ok, ok ? "coverings pass the IC check" : "a covering fails the IC check");
  return Ok;
}

int cmd_gen(std::size_t nodes, bool cuts, const std::string& out, const Globals& gl) {
  Rng rng(gl.seed);
  GraphGenOptions o;
  o.max_nodes = nodes;
  o.allow_cut = cuts;
  write_text(out, graph_text(random_graph(rng, o), gl));
  return Ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mumall: regular muMALL proofs, progressivity, multicut cut elimination"};
  app.require_subcommand(1);
  Globals gl;
  app.add_option("--format", gl.format, "graph output format")->check(CLI::IsMember({"json", "dot"}));
  app.add_option("--seed", gl.seed, "seed for random generation");

  std::string proof;
  auto* check = app.add_subcommand("check", "validate every rule application");
  check->add_option("proof", proof, "proof graph JSON")->required();

  bool oracle = false;
  std::optional<std::size_t> bound;
  std::string tie = "lex";
  auto* progress = app.add_subcommand("progress", "decide progressivity");
  progress->add_option("proof", proof, "proof graph JSON")->required();
  progress->add_flag("--oracle", oracle, "also run the lasso enumeration and compare");
  progress->add_option("--bound", bound, "oracle lasso bound");
  progress->add_option("--tie", tie, "tie-break of the priority order")->check(CLI::IsMember({"lex", "reverse"}));

  std::string formula, out;
  auto* id = app.add_subcommand("id", "identity proof of a formula");
  id->add_option("--formula", formula, "closed formula")->required();
  id->add_option("-o,--output", out, "output file");

  NormalizeArgs na;
  auto* normalize = app.add_subcommand("normalize", "run multicut cut elimination");
  normalize->add_option("proof", na.proof, "proof graph JSON");
  normalize->add_option("--depth", na.depth, "prefix depth")->check(CLI::NonNegativeNumber);
  normalize->add_option("--budget", na.budget, "maximum number of events");
  normalize->add_flag("--no-id-wrap", na.no_wrap, "do not precompose with identities");
  normalize->add_option("--policy", na.policy, "scheduling policy")
      ->check(CLI::IsMember({"demand", "first", "last", "alternate"}));
  normalize->add_option("--emit", na.emit, "write the cut-free prefix");
  normalize->add_option("--events", na.events, "write the event log as JSON lines");
  normalize->add_option("--checkpoint", na.checkpoint, "write the engine state");
  normalize->add_option("--resume", na.resume, "continue from a checkpoint");

  std::string subgraph;
  std::size_t ic_bound = 20;
  bool external = false;
  auto* ic = app.add_subcommand("ic-verify", "bounded IC check of a subgraph");
  ic->add_option("proof", proof, "proof graph JSON")->required();
  ic->add_option("--subgraph", subgraph, "node ids: JSON list, file, or comma separated");
  ic->add_option("--bound", ic_bound, "lasso size bound");
  ic->add_flag("--external", external, "also look for a good external thread");

  std::size_t steps = 600;
  std::vector<std::string> paths{"demand"};
  std::size_t cov_bound = 20;
  auto* cov = app.add_subcommand("covering", "frontier covering of a reduction path");
  cov->add_option("proof", proof, "proof graph JSON")->required();
  cov->add_option("--steps", steps, "events to observe");
  cov->add_option("--path", paths, "path selector policy[:choices]; repeatable");
  cov->add_option("--bound", cov_bound, "lasso size bound for the branch listing");

  std::size_t nodes = 8;
  bool cuts = false;
  auto* gen = app.add_subcommand("gen", "random regular proof");
  gen->add_option("--nodes", nodes, "maximum node count")->check(CLI::PositiveNumber);
  gen->add_flag("--cuts", cuts, "allow cut rules");
  gen->add_option("-o,--output", out, "output file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check) return cmd_check(proof);
    if (*progress) return cmd_progress(proof, oracle, bound, tie);
    if (*id) return cmd_id(formula, out, gl);
    if (*normalize) return cmd_normalize(na, gl);
    if (*ic) return cmd_ic_verify(proof, subgraph, ic_bound, external);
    if (*cov) return cmd_covering(proof, steps, paths, cov_bound);
    if (*gen) return cmd_gen(nodes, cuts, out, gl);
  } catch (const std::exception& e) {
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return Invalid;
  }
  return Invalid;
}
