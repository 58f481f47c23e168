#include "mumall/icsets.hpp"

#include <algorithm>
#include <deque>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <tuple>

namespace mumall {

using nlohmann::json;

PathSelector PathSelector::parse(const std::string& text) {
  PathSelector s;
  std::string choices = text;
  if (auto colon = text.find(':'); colon != std::string::npos) {
    const std::string name = text.substr(0, colon);
    choices = text.substr(colon + 1);
    if (!name.empty()) {
      const auto p = policy_from_name(name);
      if (!p) throw std::invalid_argument("unknown policy '" + name + "'");
      s.policy = *p;
    }
  } else if (const auto p = policy_from_name(text)) {
    s.policy = *p;
    return s;
  }
  if (choices.empty()) return s;
  s.cyclic = choices.back() == '*';
  if (s.cyclic) choices.pop_back();
  s.choices.clear();
  for (char ch : choices) {
    if (ch != '0' && ch != '1') throw std::invalid_argument("path choices must be 0 or 1, got '" + text + "'");
    s.choices.push_back(ch - '0');
  }
  if (s.choices.empty() && s.cyclic) throw std::invalid_argument("empty cyclic selector");
  return s;
}

int PathSelector::next() {
  if (used < choices.size()) return choices[used++];
  if (!cyclic || choices.empty()) throw SelectorExhausted("path selector exhausted after " + std::to_string(used) + " choices");
  return choices[used++ % choices.size()];
}

std::string PathSelector::str() const {
  std::string s = std::string(policy_name(policy)) + ":";
  for (int c : choices) s += static_cast<char>('0' + c);
  if (cyclic) s += '*';
  return s;
}

FrontierPath frontier_evolution(const std::vector<ReductionEvent>& events, PathSelector& sel) {
  FrontierPath p;
  int cur = 0;
  p.jobs.push_back(cur);
  p.frontiers.push_back({Position{}});
  for (std::size_t i = 0; i < events.size(); ++i) {
    const ReductionEvent& e = events[i];
    if (e.job != cur) continue;
    p.events.push_back(i);
    if (e.results.empty()) {
      p.alive = false;
      break;
    }
    if (e.frontiers.size() != e.results.size()) throw std::invalid_argument("events carry no frontiers");
    std::size_t pick = 0;
    if (e.results.size() > 1) {
      pick = static_cast<std::size_t>(sel.next());
      if (pick >= e.results.size()) throw SelectorExhausted("choice out of range at event " + std::to_string(i));
    }
    cur = e.results[pick];
    p.jobs.push_back(cur);
    p.frontiers.push_back(e.frontiers[pick]);
  }
  p.proper = p.alive && !p.events.empty() && p.events.back() >= events.size() / 2;
  return p;
}

Covering covering(const FrontierPath& p) {
  Covering c;
  for (const Frontier& f : p.frontiers)
    for (const Position& pos : f)
      for (std::size_t k = 0; k <= pos.size(); ++k) c.insert(Position(pos.begin(), pos.begin() + k));
  return c;
}

Subgraph induced_subgraph(const ProofGraph& g, const std::set<std::size_t>& nodes) {
  Subgraph h;
  h.nodes = nodes;
  for (std::size_t x : nodes) {
    const auto& ps = g.node(x).premises;
    for (std::size_t s = 0; s < ps.size(); ++s)
      if (nodes.count(ps[s])) h.edges.insert({x, static_cast<int>(s)});
  }
  return h;
}

Subgraph covering_subgraph(const ProofGraph& g, const Covering& c) {
  Subgraph h;
  for (const Position& p : c) {
    h.nodes.insert(node_at(g, p));
    if (!p.empty()) h.edges.insert({node_at(g, Position(p.begin(), p.end() - 1)), p.back()});
  }
  return h;
}

std::vector<std::string> subgraph_ids(const ProofGraph& g, const Subgraph& h) {
  std::vector<std::string> ids;
  for (std::size_t x : h.nodes) ids.push_back(g.node(x).id);
  return ids;
}

CoveringRun run_covering(const ProofGraph& g, std::size_t steps, const std::string& selector) {
  PathSelector sel = PathSelector::parse(selector);
  NormalizerOptions o;
  o.auto_wrap = false;
  o.budget = steps;
  o.policy = sel.policy;
  o.record_frontiers = true;
  Normalizer n(g, o);
  CoveringRun r;
  r.status = n.run();
  r.events = n.events().size();
  r.path = frontier_evolution(n.events(), sel);
  r.cover = covering(r.path);
  r.nodes = covering_subgraph(g, r.cover);
  return r;
}

Subgraph parse_subgraph(const ProofGraph& g, const json& ids) {
  if (!ids.is_array()) throw std::invalid_argument("subgraph must be a list of node ids");
  std::set<std::size_t> nodes;
  for (const json& id : ids) {
    const auto n = g.find(id.get<std::string>());
    if (!n) throw std::invalid_argument("unknown node id '" + id.get<std::string>() + "'");
    nodes.insert(*n);
  }
  return induced_subgraph(g, nodes);
}

Subgraph parse_subgraph(const ProofGraph& g, const std::string& text) {
  if (!text.empty() && text.front() == '[') return parse_subgraph(g, json::parse(text));
  if (std::filesystem::is_regular_file(text)) {
    std::ifstream in(text);
    return parse_subgraph(g, json::parse(in));
  }
  json ids = json::array();
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) ids.push_back(item);
  return parse_subgraph(g, ids);
}

Subgraph whole_graph(const ProofGraph& g) {
  std::set<std::size_t> nodes;
  for (std::size_t i = 0; i < g.size(); ++i) nodes.insert(i);
  return induced_subgraph(g, nodes);
}

namespace {

void require_rooted(const ProofGraph& g, const Subgraph& h) {
  if (h.nodes.empty()) throw std::invalid_argument("empty subgraph");
  if (!h.nodes.count(g.root())) throw std::invalid_argument("subgraph does not contain the root");
}

}  // namespace

std::vector<Lasso> subgraph_lassos(const ProofGraph& g, const Subgraph& h, std::size_t bound, std::size_t limit) {
  require_rooted(g, h);
  std::set<Lasso> found;
  std::vector<Step> walk;
  std::size_t visited = 0;
  std::function<void(std::size_t)> go = [&](std::size_t x) {
    if (++visited > limit) throw OracleLimit("subgraph lasso enumeration limit exceeded");
    for (std::size_t i = 0; i < walk.size(); ++i)
      if (walk[i].node == x)
        found.insert(canonical(Lasso{{walk.begin(), walk.begin() + static_cast<std::ptrdiff_t>(i)},
                                     {walk.begin() + static_cast<std::ptrdiff_t>(i), walk.end()}}));
    if (walk.size() == bound) return;
    const auto& ps = g.node(x).premises;
    for (std::size_t s = 0; s < ps.size(); ++s) {
      if (!h.has({x, static_cast<int>(s)})) continue;
      walk.push_back({x, static_cast<int>(s)});
      go(ps[s]);
      walk.pop_back();
    }
  };
  go(g.root());
  std::vector<Lasso> out;
  for (const Lasso& l : found)
    if (l.size() <= bound) out.push_back(l);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::size_t> meet(const Lasso& b, const Lasso& c) {
  const std::size_t horizon = b.size() + c.size() + b.loop.size() * c.loop.size();
  for (std::size_t t = 0; t < horizon; ++t)
    if (!(b.at(t) == c.at(t))) return t;
  return std::nullopt;
}

namespace {

bool coherent_at(const TraceContext& ctx, const Lasso& b, const Lasso& c, std::size_t t, const OmegaWord& tau) {
  const auto m = meet(b, c);
  if (!m || *m != t) return false;
  const auto ob = cut_occurrence(ctx, b.at(t));
  const auto oc = cut_occurrence(ctx, c.at(t));
  if (!ob || !oc) return false;
  const int pos = static_cast<int>(t + 1);
  return bears(ctx, b, pos, *ob, tau) && bears(ctx, c, pos, *oc, tau.dual());
}

struct InternalThread {
  std::size_t step;
  OmegaWord word;
};

std::vector<InternalThread> internal_threads_of(const TraceContext& ctx, const Lasso& b) {
  std::vector<InternalThread> out;
  for (std::size_t t = 0; t < b.size(); ++t) {
    const auto occ = cut_occurrence(ctx, b.at(t));
    if (!occ) continue;
    for (const LassoTrace& tr : traces_from(ctx, b, static_cast<int>(t + 1), *occ)) {
      if (!tr.thread) continue;
      const bool seen = std::any_of(out.begin(), out.end(),
                                    [&](const InternalThread& x) { return x.step == t && x.word == tr.word; });
      if (!seen) out.push_back({t, tr.word});
    }
  }
  return out;
}

}  // namespace

bool check_coherence(const TraceContext& ctx, const Lasso& b, const Lasso& c, const OmegaWord& tau) {
  const auto m = meet(b, c);
  if (!m) return false;
  return coherent_at(ctx, b, c, *m, tau);
}

std::optional<Lasso> find_partner(const TraceContext& ctx, const Subgraph& h, const Lasso& b, std::size_t t,
                                  const OmegaWord& tau) {
  const OmegaWord want = tau.dual();
  const ProofGraph& g = ctx.graph();
  const Step at = b.at(t);
  if (g.node(at.node).rule.name != RuleName::Cut || want.cycle.empty()) return std::nullopt;
  const Step other{at.node, 1 - at.slot};
  const std::size_t y = ctx.target(other);
  if (!h.has(other)) return std::nullopt;

  const int ws = static_cast<int>(want.stem.size()), wn = ws + static_cast<int>(want.cycle.size());
  auto letter = [&](int i) -> const Formula& { return i < ws ? want.stem[i] : want.cycle[i - ws]; };
  using S = std::tuple<std::size_t, int, int>;
  struct E {
    S to;
    Step step;
    bool principal;
  };
  std::map<S, std::vector<E>> adj;
  std::map<S, std::pair<S, Step>> parent;
  const S start{y, *cut_occurrence(ctx, other), 0};
  std::deque<S> q{start};
  adj[start];
  while (!q.empty()) {
    const S s = q.front();
    q.pop_front();
    const auto [x, k, i] = s;
    std::vector<E> out;
    const auto& ps = g.node(x).premises;
    for (std::size_t slot = 0; slot < ps.size(); ++slot) {
      const Step st{x, static_cast<int>(slot)};
      if (!h.has(st)) continue;
      for (const RankedAncestor& a : ctx.relation(st)) {
        if (a.from != k) continue;
        if (a.event == StepEvent::None)
          out.push_back({S{ps[slot], a.to, i}, st, false});
        else if (ctx.formula(x, k) == letter(i))
          out.push_back({S{ps[slot], a.to, i + 1 < wn ? i + 1 : ws}, st, true});
      }
    }
    for (const E& e : out)
      if (!adj.count(e.to)) {
        adj[e.to];
        parent.emplace(e.to, std::make_pair(s, e.step));
        q.push_back(e.to);
      }
    adj[s] = std::move(out);
  }
  auto path_between = [&](const S& from, const S& to) -> std::optional<std::vector<Step>> {
    std::map<S, std::pair<S, Step>> par;
    std::deque<S> qq{from};
    std::set<S> seen{from};
    while (!qq.empty()) {
      const S s = qq.front();
      qq.pop_front();
      if (s == to) {
        std::vector<Step> steps;
        for (S cur = to; cur != from; cur = par.at(cur).first) steps.push_back(par.at(cur).second);
        std::reverse(steps.begin(), steps.end());
        return steps;
      }
      for (const E& e : adj[s])
        if (seen.insert(e.to).second) {
          par.emplace(e.to, std::make_pair(s, e.step));
          qq.push_back(e.to);
        }
    }
    return std::nullopt;
  };
  for (const auto& [s, es] : adj) {
    for (const E& e : es) {
      if (!e.principal) continue;
      auto back = path_between(e.to, s);
      if (!back) continue;
      std::vector<Step> stem;
      for (std::size_t u = 0; u < t; ++u) stem.push_back(b.at(u));
      stem.push_back(other);
      std::vector<Step> lead;
      for (S cur = s; cur != start; cur = parent.at(cur).first) lead.push_back(parent.at(cur).second);
      stem.insert(stem.end(), lead.rbegin(), lead.rend());
      std::vector<Step> loop{e.step};
      loop.insert(loop.end(), back->begin(), back->end());
      return canonical(Lasso{stem, loop});
    }
  }
  return std::nullopt;
}

IcReport verify_ic_candidate(const TraceContext& ctx, const Subgraph& h, std::size_t bound) {
  IcReport r;
  const std::vector<Lasso> lassos = subgraph_lassos(ctx.graph(), h, bound);
  r.lassos = lassos.size();
  for (const Lasso& b : lassos) {
    for (const InternalThread& th : internal_threads_of(ctx, b)) {
      ++r.internal_threads;
      if (!find_partner(ctx, h, b, th.step, th.word)) r.violations.push_back({b, th.step, th.word});
    }
  }
  return r;
}

json ic_report_to_json(const TraceContext& ctx, const IcReport& r, std::size_t bound) {
  json vs = json::array();
  for (const IcViolation& v : r.violations)
    vs.push_back({{"branch", lasso_to_json(ctx.graph(), v.branch)},
                  {"cutStep", v.cut_step},
                  {"thread", v.thread.str()},
                  {"missing", "no coherent partner in the candidate"}});
  return {{"ok", r.ok()},
          {"bound", bound},
          {"lassos", r.lassos},
          {"internalThreads", r.internal_threads},
          {"result", r.ok() ? "no violation up to bound" : "violation"},
          {"violations", vs}};
}

ExternalResult external_progressivity_witness(const TraceContext& ctx, const Subgraph& h, std::size_t bound) {
  ExternalResult res;
  const std::vector<Lasso> lassos = subgraph_lassos(ctx.graph(), h, bound);
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < lassos.size(); ++i) {
    if (lasso_has_good_external_thread(ctx, lassos[i])) {
      if (!res.witness) res.witness = lassos[i];
    } else {
      bad.push_back(i);
    }
  }
  // largest set of bad lassos closed under coherent partners
  std::map<std::size_t, std::vector<InternalThread>> threads;
  for (std::size_t i : bad) threads[i] = internal_threads_of(ctx, lassos[i]);
  for (bool changed = true; changed;) {
    changed = false;
    for (auto it = bad.begin(); it != bad.end();) {
      const Lasso& b = lassos[*it];
      const bool closed = std::all_of(threads[*it].begin(), threads[*it].end(), [&](const InternalThread& th) {
        return std::any_of(bad.begin(), bad.end(),
                           [&](std::size_t j) { return coherent_at(ctx, b, lassos[j], th.step, th.word); });
      });
      if (closed) {
        ++it;
      } else {
        it = bad.erase(it);
        changed = true;
      }
    }
  }
  res.ok = bad.empty();
  for (std::size_t i : bad) res.bad_set.push_back(lassos[i]);
  return res;
}

}  // namespace mumall
