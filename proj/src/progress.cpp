#include "mumall/progress.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <tuple>

namespace mumall {

using nlohmann::json;

const Step& Lasso::at(std::size_t t) const {
  if (t < stem.size()) return stem[t];
  if (loop.empty()) throw std::out_of_range("lasso without a loop");
  return loop[(t - stem.size()) % loop.size()];
}

bool operator<(const Lasso& a, const Lasso& b) {
  return std::make_tuple(a.size(), a.stem.size(), a.stem, a.loop) <
         std::make_tuple(b.size(), b.stem.size(), b.stem, b.loop);
}

Lasso canonical(Lasso l) {
  const std::size_t n = l.loop.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d) continue;
    bool rep = true;
    for (std::size_t i = d; i < n && rep; ++i) rep = l.loop[i] == l.loop[i - d];
    if (rep) {
      l.loop.resize(d);
      break;
    }
  }
  while (!l.stem.empty() && l.stem.back() == l.loop.back()) {
    l.stem.pop_back();
    std::rotate(l.loop.rbegin(), l.loop.rbegin() + 1, l.loop.rend());
  }
  return l;
}

std::size_t next_position(const Lasso& l, std::size_t t) {
  const std::size_t s = l.stem.size(), n = l.size();
  if (t + 1 < n) return t + 1;
  return s + (t + 1 - s) % l.loop.size();
}

namespace {

std::size_t wrap(const Lasso& l, std::size_t t) {
  if (t < l.size()) return t;
  return l.stem.size() + (t - l.stem.size()) % l.loop.size();
}

}  // namespace

std::vector<std::vector<std::vector<RankedAncestor>>> step_relations(const ProofGraph& g, const FlClosure& c) {
  std::vector<std::vector<std::vector<RankedAncestor>>> rel(g.size());
  for (std::size_t u = 0; u < g.size(); ++u) {
    const ProofNode& n = g.node(u);
    RuleApplication app;
    try {
      app = apply_rule(n.sequent, n.rule);
    } catch (const std::exception& e) {
      throw std::invalid_argument("node " + n.id + ": " + e.what());
    }
    if (app.premises.size() != n.premises.size())
      throw std::invalid_argument("node " + n.id + ": wrong number of premises");
    for (auto& anc : app.ancestry) {
      std::vector<RankedAncestor> r;
      for (auto& a : anc)
        r.push_back({a.from, a.to, a.event, a.event == StepEvent::Unfold ? c.rank(n.sequent[a.from]) : kNoRank});
      rel[u].push_back(std::move(r));
    }
  }
  return rel;
}

namespace {

FlClosure graph_closure(const ProofGraph& g, TieBreak tie) {
  std::vector<Formula> seeds;
  for (auto& n : g.nodes()) {
    seeds.insert(seeds.end(), n.sequent.begin(), n.sequent.end());
    if (n.rule.cut_formula) seeds.push_back(*n.rule.cut_formula);
  }
  return FlClosure::compute(seeds, tie);
}

}  // namespace

TraceContext::TraceContext(ProofGraph g, TieBreak tie)
    : g_(std::move(g)), closure_(graph_closure(g_, tie)), rel_(step_relations(g_, closure_)) {}

void TraceContext::check(const Lasso& l) const {
  if (l.loop.empty()) throw std::invalid_argument("lasso with an empty loop");
  std::size_t expect = g_.root();
  auto walk = [&](const Step& s) {
    if (s.node != expect) throw std::invalid_argument("lasso steps do not chain");
    if (s.slot < 0 || s.slot >= static_cast<int>(g_.node(s.node).premises.size()))
      throw std::invalid_argument("lasso slot out of range");
    expect = target(s);
  };
  for (auto& s : l.stem) walk(s);
  std::size_t loop_start = expect;
  for (auto& s : l.loop) walk(s);
  if (expect != loop_start) throw std::invalid_argument("lasso loop does not close");
}

std::string TraceContext::describe(const Lasso& l) const {
  std::string s;
  for (auto& st : l.stem) s += g_.node(st.node).id + " ";
  s += "(";
  for (std::size_t i = 0; i < l.loop.size(); ++i) s += (i ? " " : "") + g_.node(l.loop[i].node).id;
  return s + ")^w";
}

namespace {

const RankedAncestor* find_link(const std::vector<RankedAncestor>& rel, int from, int to) {
  for (auto& a : rel)
    if (a.from == from && a.to == to) return &a;
  return nullptr;
}

}  // namespace

ThreadClass classify_thread(const TraceContext& ctx, const Lasso& l, const std::vector<int>& track) {
  ctx.check(l);
  if (track.size() != l.loop.size() + 1) throw std::invalid_argument("track length must be loop length + 1");
  if (track.front() != track.back()) throw std::invalid_argument("track does not close up");
  bool principal = false;
  int min_rank = kNoRank;
  for (std::size_t t = 0; t < l.loop.size(); ++t) {
    const RankedAncestor* a = find_link(ctx.relation(l.loop[t]), track[t], track[t + 1]);
    if (!a) throw std::invalid_argument("track is not a trace at loop step " + std::to_string(t));
    if (a->event != StepEvent::None) principal = true;
    min_rank = std::min(min_rank, a->rank);
  }
  if (!principal) throw WeakThreadError("eventually constant weak thread");
  if (min_rank == kNoRank) throw WeakThreadError("thread without unfoldings");
  return {min_rank % 2 == 0, min_rank};
}

namespace {

struct Entry {
  int i, j, r;
  bool p;
  friend bool operator<(const Entry& a, const Entry& b) {
    return std::tie(a.i, a.j, a.r, a.p) < std::tie(b.i, b.j, b.r, b.p);
  }
  friend bool operator==(const Entry& a, const Entry& b) {
    return a.i == b.i && a.j == b.j && a.r == b.r && a.p == b.p;
  }
};
using Composite = std::vector<Entry>;

Composite edge_composite(const std::vector<RankedAncestor>& rel) {
  Composite c;
  for (auto& a : rel) c.push_back({a.from, a.to, a.rank, a.event != StepEvent::None});
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  return c;
}

Composite compose(const Composite& a, const Composite& b) {
  Composite c;
  for (auto& x : a)
    for (auto& y : b)
      if (x.j == y.i) c.push_back({x.i, y.j, std::min(x.r, y.r), x.p || y.p});
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  return c;
}

bool good_diagonal(const Composite& c) {
  for (auto& e : c)
    if (e.i == e.j && e.r != kNoRank && e.r % 2 == 0) return true;
  return false;
}

struct Reach {
  std::vector<int> dist;
  std::vector<std::optional<Step>> parent;
};

Reach reach_from_root(const ProofGraph& g) {
  Reach r{std::vector<int>(g.size(), -1), std::vector<std::optional<Step>>(g.size())};
  std::deque<std::size_t> q{g.root()};
  r.dist[g.root()] = 0;
  while (!q.empty()) {
    std::size_t u = q.front();
    q.pop_front();
    auto& ps = g.node(u).premises;
    for (std::size_t s = 0; s < ps.size(); ++s)
      if (r.dist[ps[s]] < 0) {
        r.dist[ps[s]] = r.dist[u] + 1;
        r.parent[ps[s]] = Step{u, static_cast<int>(s)};
        q.push_back(ps[s]);
      }
  }
  return r;
}

std::vector<Step> stem_to(const Reach& r, std::size_t u) {
  std::vector<Step> out;
  while (r.parent[u]) {
    out.push_back(*r.parent[u]);
    u = r.parent[u]->node;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

// a trace k -> k around the loop whose minimal rank is exactly r
std::vector<int> track_with_rank(const TraceContext& ctx, const std::vector<Step>& loop, int k, int r) {
  const std::size_t n = loop.size();
  // seen[t][{idx, hit}] -> predecessor (idx, hit)
  std::vector<std::map<std::pair<int, bool>, std::pair<int, bool>>> seen(n + 1);
  seen[0][{k, false}] = {-1, false};
  for (std::size_t t = 0; t < n; ++t)
    for (auto& [st, _] : seen[t])
      for (auto& a : ctx.relation(loop[t])) {
        if (a.from != st.first || a.rank < r) continue;
        std::pair<int, bool> nx{a.to, st.second || a.rank == r};
        seen[t + 1].emplace(nx, st);
      }
  std::pair<int, bool> cur{k, true};
  if (!seen[n].count(cur)) throw std::logic_error("no witness trace for an idempotent composite");
  std::vector<int> track(n + 1);
  for (std::size_t t = n + 1; t-- > 0;) {
    track[t] = cur.first;
    if (t > 0) cur = seen[t].at(cur);
  }
  return track;
}

}  // namespace

Verdict check_progressivity(const TraceContext& ctx) {
  const ProofGraph& g = ctx.graph();
  Reach reach = reach_from_root(g);

  struct State {
    std::size_t u, v;
    Composite r;
    long parent;
    Step last;
  };
  std::vector<State> states;
  std::map<std::tuple<std::size_t, std::size_t, Composite>, std::size_t> index;
  std::deque<std::size_t> queue;
  auto push = [&](std::size_t u, std::size_t v, Composite r, long parent, Step last) {
    auto key = std::make_tuple(u, v, r);
    if (index.count(key)) return;
    index.emplace(key, states.size());
    states.push_back({u, v, std::move(r), parent, last});
    queue.push_back(states.size() - 1);
  };
  for (std::size_t u = 0; u < g.size(); ++u) {
    if (reach.dist[u] < 0) continue;
    auto& ps = g.node(u).premises;
    for (std::size_t s = 0; s < ps.size(); ++s) {
      Step st{u, static_cast<int>(s)};
      push(u, ps[s], edge_composite(ctx.relation(st)), -1, st);
    }
  }
  while (!queue.empty()) {
    std::size_t i = queue.front();
    queue.pop_front();
    const std::size_t v = states[i].v;
    auto& ps = g.node(v).premises;
    for (std::size_t s = 0; s < ps.size(); ++s) {
      Step st{v, static_cast<int>(s)};
      Composite c = compose(states[i].r, edge_composite(ctx.relation(st)));
      push(states[i].u, ps[s], std::move(c), static_cast<long>(i), st);
    }
  }

  auto path_of = [&](std::size_t i) {
    std::vector<Step> p;
    for (long j = static_cast<long>(i); j >= 0; j = states[j].parent) p.push_back(states[j].last);
    std::reverse(p.begin(), p.end());
    return p;
  };

  Verdict verdict;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const State& st = states[i];
    if (st.u != st.v) continue;
    Composite q = st.r;
    while (compose(q, q) != q) q = compose(q, st.r);
    if (!good_diagonal(q)) {
      Lasso l{stem_to(reach, st.u), path_of(i)};
      if (!verdict.counterexample || l < *verdict.counterexample) verdict.counterexample = l;
      verdict.progressing = false;
      continue;
    }
    if (q != st.r) continue;
    int best_r = kNoRank, best_k = -1;
    for (auto& e : q)
      if (e.i == e.j && e.r != kNoRank && e.r % 2 == 0 && (e.r < best_r || (e.r == best_r && e.i < best_k))) {
        best_r = e.r;
        best_k = e.i;
      }
    Lasso l{stem_to(reach, st.u), path_of(i)};
    verdict.witnesses.push_back({l, track_with_rank(ctx, l.loop, best_k, best_r), best_r});
  }
  if (!verdict.progressing) verdict.witnesses.clear();
  std::sort(verdict.witnesses.begin(), verdict.witnesses.end(),
            [](const ThreadWitness& a, const ThreadWitness& b) { return a.lasso < b.lasso; });
  return verdict;
}

Verdict check_progressivity(const ProofGraph& g, TieBreak tie) { return check_progressivity(TraceContext(g, tie)); }

namespace {

// is there a cycle in the product of the lasso whose minimal rank is even;
// with `from_root`, only states reached from the conclusion count
bool lasso_good_cycle(const TraceContext& ctx, const Lasso& l, bool from_root) {
  const std::size_t n = l.size();
  std::vector<std::size_t> offset(n + 1, 0);
  for (std::size_t t = 0; t < n; ++t) offset[t + 1] = offset[t] + ctx.graph().node(l.at(t).node).sequent.size();
  struct Edge {
    std::size_t a, b;
    int r;
  };
  std::vector<Edge> edges;
  std::set<int> even;
  for (std::size_t t = 0; t < n; ++t) {
    std::size_t nt = next_position(l, t);
    for (auto& a : ctx.relation(l.at(t))) {
      edges.push_back({offset[t] + a.from, offset[nt] + a.to, a.rank});
      if (a.rank != kNoRank && a.rank % 2 == 0) even.insert(a.rank);
    }
  }
  const std::size_t m = offset[n];
  std::vector<bool> live(m, true);
  if (from_root) {
    std::vector<std::vector<std::size_t>> out(m);
    for (auto& e : edges) out[e.a].push_back(e.b);
    std::fill(live.begin(), live.end(), false);
    std::vector<std::size_t> todo;
    for (std::size_t k = 0; k < offset[1]; ++k) {
      live[k] = true;
      todo.push_back(k);
    }
    while (!todo.empty()) {
      std::size_t x = todo.back();
      todo.pop_back();
      for (std::size_t y : out[x])
        if (!live[y]) {
          live[y] = true;
          todo.push_back(y);
        }
    }
    std::erase_if(edges, [&](const Edge& e) { return !live[e.a]; });
  }
  for (int r : even) {
    std::vector<std::vector<std::size_t>> adj(m), radj(m);
    for (auto& e : edges)
      if (e.r >= r) {
        adj[e.a].push_back(e.b);
        radj[e.b].push_back(e.a);
      }
    // Kosaraju
    std::vector<bool> vis(m, false);
    std::vector<std::size_t> order;
    for (std::size_t s = 0; s < m; ++s) {
      if (vis[s]) continue;
      std::vector<std::pair<std::size_t, std::size_t>> stack{{s, 0}};
      vis[s] = true;
      while (!stack.empty()) {
        auto& [x, i] = stack.back();
        if (i < adj[x].size()) {
          std::size_t y = adj[x][i++];
          if (!vis[y]) {
            vis[y] = true;
            stack.push_back({y, 0});
          }
        } else {
          order.push_back(x);
          stack.pop_back();
        }
      }
    }
    std::vector<long> comp(m, -1);
    long c = 0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      if (comp[*it] >= 0) continue;
      std::vector<std::size_t> stack{*it};
      comp[*it] = c;
      while (!stack.empty()) {
        std::size_t x = stack.back();
        stack.pop_back();
        for (std::size_t y : radj[x])
          if (comp[y] < 0) {
            comp[y] = c;
            stack.push_back(y);
          }
      }
      ++c;
    }
    for (auto& e : edges)
      if (e.r == r && comp[e.a] == comp[e.b]) return true;
  }
  return false;
}

bool walk_has_good_thread(const TraceContext& ctx, const std::vector<Step>& walk) {
  return lasso_good_cycle(ctx, Lasso{{}, walk}, false);
}

}  // namespace

bool lasso_has_good_thread(const TraceContext& ctx, const Lasso& l) {
  ctx.check(l);
  return walk_has_good_thread(ctx, l.loop);
}

bool lasso_has_good_external_thread(const TraceContext& ctx, const Lasso& l) {
  ctx.check(l);
  return lasso_good_cycle(ctx, l, true);
}

std::size_t completeness_bound(const ProofGraph& g) { return g.size() * g.max_sequent_length() * 2 + 2; }

OracleResult brute_force_progressivity(const TraceContext& ctx, std::size_t bound, std::size_t limit) {
  const ProofGraph& g = ctx.graph();
  Reach reach = reach_from_root(g);
  OracleResult res;
  std::vector<Step> walk;
  std::vector<std::vector<std::size_t>> pred(g.size());
  for (std::size_t x = 0; x < g.size(); ++x)
    for (auto p : g.node(x).premises) pred[p].push_back(x);
  for (std::size_t len = 1; len <= bound; ++len) {
    for (std::size_t u = 0; u < g.size(); ++u) {
      if (reach.dist[u] < 0 || reach.dist[u] + len > bound) continue;
      // distance from every node back to u
      std::vector<int> back(g.size(), -1);
      std::deque<std::size_t> q{u};
      back[u] = 0;
      while (!q.empty()) {
        std::size_t x = q.front();
        q.pop_front();
        for (auto y : pred[x])
          if (back[y] < 0) {
            back[y] = back[x] + 1;
            q.push_back(y);
          }
      }
      std::function<bool(std::size_t)> dfs = [&](std::size_t x) -> bool {
        if (walk.size() == len) {
          if (x != u) return false;
          if (++res.lassos_checked > limit) throw OracleLimit("lasso enumeration limit exceeded");
          if (!walk_has_good_thread(ctx, walk)) {
            res.progressing = false;
            res.counterexample = Lasso{stem_to(reach, u), walk};
            return true;
          }
          return false;
        }
        auto& ps = g.node(x).premises;
        for (std::size_t s = 0; s < ps.size(); ++s) {
          std::size_t y = ps[s];
          if (back[y] < 0 || static_cast<std::size_t>(back[y]) > len - walk.size() - 1) continue;
          walk.push_back({x, static_cast<int>(s)});
          if (dfs(y)) return true;
          walk.pop_back();
        }
        return false;
      };
      walk.clear();
      if (dfs(u)) return res;
    }
  }
  return res;
}

OracleResult brute_force_progressivity(const ProofGraph& g, std::size_t bound) {
  return brute_force_progressivity(TraceContext(g), bound);
}

double count_oracle_lassos(const ProofGraph& g, std::size_t bound) {
  Reach reach = reach_from_root(g);
  double total = 0;
  for (std::size_t u = 0; u < g.size(); ++u) {
    if (reach.dist[u] < 0) continue;
    std::vector<double> cnt(g.size(), 0.0);
    cnt[u] = 1;
    for (std::size_t len = 1; reach.dist[u] + len <= bound; ++len) {
      std::vector<double> nx(g.size(), 0.0);
      for (std::size_t x = 0; x < g.size(); ++x)
        if (cnt[x] > 0)
          for (auto y : g.node(x).premises) nx[y] += cnt[x];
      cnt.swap(nx);
      total += cnt[u];
    }
  }
  return total;
}

void OmegaWord::normalize() {
  const std::size_t n = cycle.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d) continue;
    bool rep = true;
    for (std::size_t i = d; i < n && rep; ++i) rep = cycle[i] == cycle[i - d];
    if (rep) {
      cycle.resize(d);
      break;
    }
  }
  while (!cycle.empty() && !stem.empty() && stem.back() == cycle.back()) {
    stem.pop_back();
    std::rotate(cycle.rbegin(), cycle.rbegin() + 1, cycle.rend());
  }
}

OmegaWord OmegaWord::dual() const {
  OmegaWord w;
  for (auto& f : stem) w.stem.push_back(negate(f));
  for (auto& f : cycle) w.cycle.push_back(negate(f));
  return w;
}

std::string OmegaWord::str() const {
  std::string s;
  for (auto& f : stem) s += render(f) + "; ";
  s += "(";
  for (std::size_t i = 0; i < cycle.size(); ++i) s += (i ? "; " : "") + render(cycle[i]);
  return s + ")^w";
}

std::vector<LassoTrace> traces_from(const TraceContext& ctx, const Lasso& l, int position, int index,
                                    std::size_t limit) {
  std::vector<LassoTrace> out;
  std::vector<std::pair<int, int>> path;
  std::map<std::pair<int, int>, std::size_t> on_path;
  auto finish = [&](std::size_t cycle_start) {
    LassoTrace tr;
    tr.origin_position = position;
    tr.origin_index = index;
    tr.external = false;
    tr.states = path;
    tr.cycle_start = cycle_start;
    tr.thread = false;
    for (std::size_t i = 0; i < path.size(); ++i) {
      auto [t, k] = path[i];
      auto nx = i + 1 < path.size() ? path[i + 1] : path[cycle_start];
      const RankedAncestor* a = find_link(ctx.relation(l.at(t)), k, nx.second);
      if (a->event == StepEvent::None) continue;
      const Formula& f = ctx.formula(l.at(t).node, k);
      if (i < cycle_start) {
        tr.word.stem.push_back(f);
      } else {
        tr.word.cycle.push_back(f);
        tr.thread = true;
      }
    }
    tr.word.normalize();
    out.push_back(std::move(tr));
  };
  std::function<void(int, int)> go = [&](int t, int k) {
    if (out.size() >= limit) return;
    std::pair<int, int> st{t, k};
    if (auto it = on_path.find(st); it != on_path.end()) {
      finish(it->second);
      return;
    }
    on_path.emplace(st, path.size());
    path.push_back(st);
    int nt = static_cast<int>(next_position(l, t));
    for (auto& a : ctx.relation(l.at(t)))
      if (a.from == k) go(nt, a.to);
    path.pop_back();
    on_path.erase(st);
  };
  go(static_cast<int>(wrap(l, position)), index);
  return out;
}

std::vector<LassoTrace> external_traces_only(const TraceContext& ctx, const Lasso& l) {
  ctx.check(l);
  std::vector<LassoTrace> out;
  const std::size_t n = ctx.graph().conclusion().size();
  for (std::size_t k = 0; k < n; ++k)
    for (auto& tr : traces_from(ctx, l, 0, static_cast<int>(k))) {
      tr.external = true;
      out.push_back(std::move(tr));
    }
  return out;
}

std::optional<int> cut_occurrence(const TraceContext& ctx, const Step& s) {
  const Rule& r = ctx.graph().node(s.node).rule;
  if (r.name != RuleName::Cut) return std::nullopt;
  return s.slot == 0 ? r.left_len : 0;
}

std::vector<LassoTrace> internal_traces(const TraceContext& ctx, const Lasso& l) {
  ctx.check(l);
  std::vector<LassoTrace> out;
  for (std::size_t t = 0; t < l.size(); ++t) {
    auto occ = cut_occurrence(ctx, l.at(t));
    if (!occ) continue;
    for (auto& tr : traces_from(ctx, l, static_cast<int>(t + 1), *occ)) out.push_back(std::move(tr));
  }
  return out;
}

bool bears(const TraceContext& ctx, const Lasso& l, int position, int index, const OmegaWord& w) {
  if (w.cycle.empty()) return false;
  const int ws = static_cast<int>(w.stem.size()), wn = ws + static_cast<int>(w.cycle.size());
  auto wnext = [&](int i) { return i + 1 < wn ? i + 1 : ws; };
  auto letter = [&](int i) -> const Formula& { return i < ws ? w.stem[i] : w.cycle[i - ws]; };
  using S = std::tuple<int, int, int>;
  struct E {
    S to;
    bool principal;
  };
  std::map<S, std::vector<E>> adj;
  std::deque<S> q;
  S start{static_cast<int>(wrap(l, position)), index, 0};
  adj[start];
  q.push_back(start);
  while (!q.empty()) {
    S s = q.front();
    q.pop_front();
    auto [t, k, i] = s;
    int nt = static_cast<int>(next_position(l, t));
    std::vector<E> out;
    for (auto& a : ctx.relation(l.at(t))) {
      if (a.from != k) continue;
      if (a.event == StepEvent::None) {
        out.push_back({S{nt, a.to, i}, false});
      } else if (ctx.formula(l.at(t).node, k) == letter(i)) {
        out.push_back({S{nt, a.to, wnext(i)}, true});
      }
    }
    for (auto& e : out)
      if (!adj.count(e.to)) {
        adj[e.to];
        q.push_back(e.to);
      }
    adj[s] = std::move(out);
  }
  // a principal edge inside a strongly connected component
  std::map<S, std::set<S>> reach;
  for (auto& [s, _] : adj) {
    std::set<S>& r = reach[s];
    std::deque<S> qq{s};
    while (!qq.empty()) {
      S x = qq.front();
      qq.pop_front();
      for (auto& e : adj[x])
        if (r.insert(e.to).second) qq.push_back(e.to);
    }
  }
  for (auto& [s, es] : adj)
    for (auto& e : es)
      if (e.principal && (e.to == s || reach[e.to].count(s))) return true;
  return false;
}

ThreadClass classify_word(const FlClosure& c, const OmegaWord& w) {
  int best = kNoRank;
  for (auto& f : w.cycle)
    if (f.is_fixpoint()) best = std::min(best, c.rank(f));
  if (best == kNoRank) throw WeakThreadError("no fixpoint recurs in the thread");
  return {best % 2 == 0, best};
}

OriginKind trace_origin(const ProofGraph& g, const std::vector<Step>& path, std::size_t position, int index) {
  if (position > path.size()) throw std::out_of_range("position beyond the path");
  int idx = index;
  for (std::size_t q = position; q-- > 0;) {
    const ProofNode& n = g.node(path[q].node);
    RuleApplication app = apply_rule(n.sequent, n.rule);
    bool found = false;
    for (auto& a : app.ancestry.at(path[q].slot))
      if (a.to == idx) {
        idx = a.from;
        found = true;
        break;
      }
    if (!found) return OriginKind::Internal;
  }
  return OriginKind::External;
}

json lasso_to_json(const ProofGraph& g, const Lasso& l) {
  json stem = json::array(), loop = json::array(), ss = json::array(), ls = json::array();
  for (auto& s : l.stem) {
    stem.push_back(g.node(s.node).id);
    ss.push_back(s.slot);
  }
  for (auto& s : l.loop) {
    loop.push_back(g.node(s.node).id);
    ls.push_back(s.slot);
  }
  return {{"stem", stem}, {"loop", loop}, {"stemSlots", ss}, {"loopSlots", ls}};
}

Lasso lasso_from_json(const ProofGraph& g, const json& j) {
  Lasso l;
  auto read = [&](const char* ids, const char* slots, std::vector<Step>& out) {
    for (std::size_t i = 0; i < j.at(ids).size(); ++i) {
      auto n = g.find(j.at(ids)[i].get<std::string>());
      if (!n) throw std::invalid_argument("unknown node in lasso");
      int slot = j.contains(slots) ? j.at(slots)[i].get<int>() : 0;
      out.push_back({*n, slot});
    }
  };
  read("stem", "stemSlots", l.stem);
  read("loop", "loopSlots", l.loop);
  return l;
}

json verdict_to_json(const TraceContext& ctx, const Verdict& v) {
  json ws = json::array();
  for (auto& w : v.witnesses)
    ws.push_back({{"loop", lasso_to_json(ctx.graph(), w.lasso)},
                  {"occurrenceCycle", w.track},
                  {"minRank", w.min_rank},
                  {"parity", w.min_rank % 2 == 0 ? "even" : "odd"}});
  json out = {{"progressing", v.progressing}, {"witnesses", ws}};
  out["counterexample"] = v.counterexample ? lasso_to_json(ctx.graph(), *v.counterexample) : json(nullptr);
  return out;
}

}  // namespace mumall
