#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include "mumall/cutelim.hpp"
#include "mumall/proof_io.hpp"

namespace mumall {

using nlohmann::json;

const char* policy_name(Policy p) {
  switch (p) {
    case Policy::Demand: return "demand";
    case Policy::First: return "first";
    case Policy::Last: return "last";
    case Policy::Alternate: return "alternate";
  }
  return "?";
}

std::optional<Policy> policy_from_name(std::string_view s) {
  for (Policy p : {Policy::Demand, Policy::First, Policy::Last, Policy::Alternate})
    if (s == policy_name(p)) return p;
  return std::nullopt;
}

const char* status_name(RunStatus s) {
  switch (s) {
    case RunStatus::Running: return "running";
    case RunStatus::Terminated: return "terminated";
    case RunStatus::Stable: return "stable";
    case RunStatus::BudgetExhausted: return "budgetExhausted";
    case RunStatus::Blocked: return "blocked";
  }
  return "?";
}

json event_to_json(const ReductionEvent& e) {
  json j{{"step", e.step},   {"kind", reduction_name(e.kind)}, {"job", e.job},
         {"location", e.location}, {"depth", e.depth}, {"premise", e.premise},
         {"results", e.results}};
  if (e.emitted) j["emitted"] = rule_to_json(*e.emitted);
  if (!e.frontiers.empty()) {
    json fs = json::array();
    for (const Frontier& f : e.frontiers) fs.push_back(f);
    j["frontiers"] = fs;
  }
  return j;
}

std::vector<int> suffix_minimum(const std::vector<int>& depths) {
  std::vector<int> out(depths.size());
  int m = std::numeric_limits<int>::max();
  for (std::size_t i = depths.size(); i-- > 0;) {
    m = std::min(m, depths[i]);
    out[i] = m;
  }
  return out;
}

namespace {

Position child_position(Position p, int k) {
  p.push_back(k);
  return p;
}

}  // namespace

Normalizer::Normalizer(const ProofGraph& d, NormalizerOptions opts) : opts_(opts) {
  if (auto defects = validate_local(d); !defects.empty())
    throw std::invalid_argument("normalize: input is not locally valid at " + defects.front().where + ": " +
                                defects.front().message);
  source_ = opts.auto_wrap ? wrap_with_identities(d) : d;
  init();
  if (opts.auto_wrap) {
    // d occupies the first indices of the wrapped graph; the rotating exch/cut spine sits below it
    for (std::size_t at = source_.root(); at >= d.size(); at = source_.node(at).premises[0]) wrapper_.insert(at);
  }
  pool_.push_back({source_.conclusion(), std::nullopt, {}, {}});
  Job j0;
  j0.id = next_job_++;
  j0.emit = 0;
  j0.depth = 0;
  Premise p{next_uid_++, source_.root(), {}, std::vector<Link>(source_.conclusion().size())};
  for (int k = 0; k < static_cast<int>(source_.conclusion().size()); ++k) j0.conclusion.push_back({p.uid, k});
  j0.premises.push_back(std::move(p));
  queue_.push_back(std::move(j0));
}

void Normalizer::init() {
  apps_.clear();
  for (const ProofNode& n : source_.nodes()) {
    apps_.push_back(apply_rule(n.sequent, n.rule));
  }
}

std::size_t Normalizer::find(const Job& job, int uid) const {
  for (std::size_t i = 0; i < job.premises.size(); ++i)
    if (job.premises[i].uid == uid) return i;
  throw std::logic_error("normalizer: dangling premise " + std::to_string(uid));
}

Normalizer::Advanced Normalizer::advance(Job& job, std::size_t pi, const std::vector<int>& slots) {
  const Premise p = job.premises[pi];
  const ProofNode& node = source_.node(p.node);
  const RuleApplication& app = apps_[p.node];
  Advanced out;
  std::vector<Premise> fresh;
  std::map<int, std::vector<Occ>> ext;
  for (int s : slots) {
    Premise np{next_uid_++, node.premises[s], child_position(p.source, s), std::vector<Link>(app.premises[s].size())};
    out.uids.push_back(np.uid);
    out.principal_to.emplace_back();
    for (const Ancestor& a : app.ancestry[s]) {
      if (a.from == app.principal) {
        out.principal_to.back().push_back(a.to);
        continue;
      }
      const Link& l = p.links[a.from];
      np.links[a.to] = l;
      if (l.external) {
        ext[a.from].push_back({np.uid, a.to});
      } else {
        Premise& q = job.premises[find(job, l.partner)];
        q.links[l.index] = {false, np.uid, a.to};
      }
    }
    fresh.push_back(std::move(np));
  }
  std::vector<Occ> c;
  for (const Occ& o : job.conclusion) {
    if (o.uid != p.uid || o.index == app.principal) {
      c.push_back(o);
      continue;
    }
    for (const Occ& n : ext[o.index]) c.push_back(n);
  }
  job.conclusion = std::move(c);
  job.premises.erase(job.premises.begin() + static_cast<std::ptrdiff_t>(pi));
  job.premises.insert(job.premises.begin() + static_cast<std::ptrdiff_t>(pi), fresh.begin(), fresh.end());
  return out;
}

std::vector<std::size_t> Normalizer::emit(std::size_t at, const Rule& r) {
  const RuleApplication app = apply_rule(pool_[at].sequent, r);
  pool_[at].rule = r;
  std::vector<std::size_t> kids;
  for (std::size_t k = 0; k < app.premises.size(); ++k) {
    kids.push_back(pool_.size());
    pool_.push_back({app.premises[k], std::nullopt, {}, child_position(pool_[at].pos, static_cast<int>(k))});
  }
  pool_[at].children = kids;
  return kids;
}

// exch on a premise; re-emitted when both occurrences reach adjacent conclusion slots through axiom-like partners
Normalizer::Advanced Normalizer::relay_exch(Job& job, std::size_t pi, ReductionEvent& ev) {
  ev.kind = ReductionKind::CommuteUnary;
  const Premise& p = job.premises[pi];
  const int k = source_.node(p.node).rule.index;
  const bool spine = wrapper_.count(p.node) > 0;
  auto surface = [&](int idx) -> std::optional<std::size_t> {
    const Link& l = p.links[static_cast<std::size_t>(idx)];
    if (l.external) return std::nullopt;
    const Premise& q = job.premises[find(job, l.partner)];
    if (q.links.size() != 2 || !q.links[1 - l.index].external) return std::nullopt;
    const Occ o{q.uid, 1 - l.index};
    const auto it = std::find(job.conclusion.begin(), job.conclusion.end(), o);
    if (it == job.conclusion.end()) return std::nullopt;
    return static_cast<std::size_t>(it - job.conclusion.begin());
  };
  const auto x = surface(k), y = surface(k + 1);
  const Advanced a = advance(job, pi, {0});
  if (!spine && x && y && std::max(*x, *y) == std::min(*x, *y) + 1) {
    const std::size_t j = std::min(*x, *y);
    const Rule r = Rule::exch(static_cast<int>(j));
    ev.emitted = r;
    std::swap(job.conclusion[j], job.conclusion[j + 1]);
    job.emit = emit(job.emit, r)[0];
    job.depth = static_cast<int>(pool_[job.emit].pos.size());
  }
  return a;
}

Sequent Normalizer::conclusion_sequent(const Job& j) const {
  Sequent s;
  for (const Occ& o : j.conclusion) {
    const Premise& p = j.premises[find(j, o.uid)];
    s.push_back(source_.node(p.node).sequent[o.index]);
  }
  return s;
}

Frontier Normalizer::frontier(const Job& j) const {
  Frontier f;
  for (const Premise& p : j.premises) f.push_back(p.source);
  return f;
}

// case (II): the principal formula of premise pi is not a cut formula
std::vector<Normalizer::Job> Normalizer::commute(Job job, std::size_t pi, ReductionEvent& ev) {
  const Premise& p = job.premises[pi];
  const ProofNode& node = source_.node(p.node);
  const int principal = apps_[p.node].principal;
  const auto it = std::find(job.conclusion.begin(), job.conclusion.end(), Occ{p.uid, principal});
  if (it == job.conclusion.end()) throw std::logic_error("normalizer: external occurrence missing");
  const int j = static_cast<int>(it - job.conclusion.begin());
  ev.premise = static_cast<int>(pi);

  Rule r = node.rule;
  r.principal = j;
  switch (node.rule.name) {
    case RuleName::Top:
    case RuleName::One:
      ev.kind = ReductionKind::CommuteUnary;
      ev.emitted = r;
      emit(job.emit, r);
      return {};
    case RuleName::With: {
      ev.kind = ReductionKind::CommuteWith;
      ev.emitted = r;
      const auto kids = emit(job.emit, r);
      std::vector<Job> out;
      for (int s = 0; s < 2; ++s) {
        Job c = job;
        c.id = next_job_++;
        const Occ old{c.premises[pi].uid, principal};
        const Advanced a = advance(c, pi, {s});
        std::replace(c.conclusion.begin(), c.conclusion.end(), old, Occ{a.uids[0], a.principal_to[0][0]});
        c.emit = kids[s];
        c.depth = static_cast<int>(pool_[c.emit].pos.size());
        c.continuation.reset();
        out.push_back(std::move(c));
      }
      return out;
    }
    case RuleName::Tensor: {
      ev.kind = ReductionKind::CommuteBinary;
      const Occ old{p.uid, principal};
      const Advanced a = advance(job, pi, {0, 1});
      std::set<int> x{a.uids[0]};
      std::vector<int> todo{a.uids[0]};
      while (!todo.empty()) {
        const Premise& q = job.premises[find(job, todo.back())];
        todo.pop_back();
        for (const Link& l : q.links)
          if (!l.external && x.insert(l.partner).second) todo.push_back(l.partner);
      }
      std::vector<Occ> kx, ky;
      for (const Occ& o : job.conclusion) {
        if (o == old) continue;
        (x.count(o.uid) ? kx : ky).push_back(o);
      }
      std::vector<Occ> target = kx;
      target.insert(target.end(), ky.begin(), ky.end());
      target.insert(target.begin() + j, old);
      // exch chain bringing the left context in front
      std::map<Occ, std::size_t> rank;
      for (std::size_t i = 0; i < target.size(); ++i) rank[target[i]] = i;
      std::vector<Occ> cur = job.conclusion;
      std::size_t at = job.emit;
      for (bool moved = true; moved;) {
        moved = false;
        for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
          if (rank[cur[i]] > rank[cur[i + 1]]) {
            std::swap(cur[i], cur[i + 1]);
            at = emit(at, Rule::exch(static_cast<int>(i)))[0];
            moved = true;
          }
        }
      }
      r.left_len = static_cast<int>(kx.size());
      ev.emitted = r;
      const auto kids = emit(at, r);
      std::vector<Job> out;
      for (int s = 0; s < 2; ++s) {
        Job c;
        c.id = next_job_++;
        for (const Premise& q : job.premises)
          if ((x.count(q.uid) > 0) == (s == 0)) c.premises.push_back(q);
        c.conclusion = s == 0 ? kx : ky;
        c.conclusion.push_back({a.uids[s], a.principal_to[s][0]});
        c.emit = kids[s];
        c.depth = static_cast<int>(pool_[c.emit].pos.size());
        out.push_back(std::move(c));
      }
      return out;
    }
    default: {
      ev.kind = ReductionKind::CommuteUnary;
      ev.emitted = r;
      const Occ old{p.uid, principal};
      const Advanced a = advance(job, pi, {0});
      std::vector<Occ> c;
      for (const Occ& o : job.conclusion) {
        if (!(o == old)) {
          c.push_back(o);
          continue;
        }
        for (int t : a.principal_to[0]) c.push_back({a.uids[0], t});
      }
      job.conclusion = std::move(c);
      job.emit = emit(job.emit, r)[0];
      job.depth = static_cast<int>(pool_[job.emit].pos.size());
      job.continuation.reset();
      return {std::move(job)};
    }
  }
}

// case (III): premises pi and qi are both principal on the cut pair linking them
std::vector<Normalizer::Job> Normalizer::critical(Job job, std::size_t pi, std::size_t qi, ReductionEvent& ev) {
  ev.premise = static_cast<int>(std::min(pi, qi));
  RuleName rp = source_.node(job.premises[pi].node).rule.name;
  RuleName rq = source_.node(job.premises[qi].node).rule.name;
  auto positive = [](RuleName r) {
    return r == RuleName::One || r == RuleName::Tensor || r == RuleName::Plus0 || r == RuleName::Plus1 ||
           r == RuleName::Mu;
  };
  if (!positive(rp)) {
    std::swap(pi, qi);
    std::swap(rp, rq);
  }
  if (!positive(rp) || positive(rq)) throw std::logic_error("normalizer: cut pair is not dual");
  const int pu = job.premises[pi].uid;
  const int qu = job.premises[qi].uid;

  auto link = [&](int a, int ai, int b, int bi) {
    job.premises[find(job, a)].links[ai] = {false, b, bi};
    job.premises[find(job, b)].links[bi] = {false, a, ai};
  };
  switch (rp) {
    case RuleName::One: {
      ev.kind = ReductionKind::Vanish;
      const Advanced b = advance(job, qi, {0});
      job.premises.erase(job.premises.begin() + static_cast<std::ptrdiff_t>(find(job, pu)));
      job.continuation = b.uids[0];
      // the unit case leaves the bare 1 rule behind when every multicut holds an identity
      if (opts_.auto_wrap && job.premises.size() == 1) {
        const ProofNode& left = source_.node(job.premises[0].node);
        if (left.rule.name != RuleName::One) ++star_violations_;
      }
      break;
    }
    case RuleName::Mu: {
      ev.kind = ReductionKind::CriticalFix;
      const Advanced a = advance(job, pi, {0});
      const Advanced b = advance(job, find(job, qu), {0});
      link(a.uids[0], a.principal_to[0][0], b.uids[0], b.principal_to[0][0]);
      job.continuation = b.uids[0];
      break;
    }
    case RuleName::Plus0:
    case RuleName::Plus1: {
      ev.kind = ReductionKind::CriticalPlusWith;
      const Advanced a = advance(job, pi, {0});
      const Advanced b = advance(job, find(job, qu), {rp == RuleName::Plus0 ? 0 : 1});
      link(a.uids[0], a.principal_to[0][0], b.uids[0], b.principal_to[0][0]);
      job.continuation = b.uids[0];
      break;
    }
    case RuleName::Tensor: {
      ev.kind = ReductionKind::CriticalTensorPar;
      const Advanced a = advance(job, pi, {0, 1});
      const Advanced b = advance(job, find(job, qu), {0});
      link(a.uids[0], a.principal_to[0][0], b.uids[0], b.principal_to[0][0]);
      link(a.uids[1], a.principal_to[1][0], b.uids[0], b.principal_to[0][1]);
      job.continuation = b.uids[0];
      break;
    }
    default:
      throw std::logic_error("normalizer: unexpected critical pair");
  }
  return {std::move(job)};
}

bool Normalizer::process(Job job) {
  ReductionEvent ev{steps_, ReductionKind::Expand, job.id, pool_[job.emit].pos, job.depth, -1, {}, {}, {}};
  const int depth = job.depth;
  auto rule_of = [&](const Premise& p) -> const Rule& { return source_.node(p.node).rule; };
  auto ready = [&](const Premise& p) {
    const Rule& r = rule_of(p);
    return r.logical() && p.links[apps_[p.node].principal].external;
  };

  std::vector<Job> results;
  bool done = false;
  // positive rule owed by the premise that just consumed a negative connective
  if (job.continuation) {
    const int uid = *job.continuation;
    job.continuation.reset();
    const auto it = std::find_if(job.premises.begin(), job.premises.end(),
                                 [&](const Premise& p) { return p.uid == uid; });
    if (it != job.premises.end() && opts_.policy == Policy::Demand) {
      const std::size_t pi = static_cast<std::size_t>(it - job.premises.begin());
      if (rule_of(*it).name == RuleName::Exch) {
        ev.premise = static_cast<int>(pi);
        const Advanced a = relay_exch(job, pi, ev);
        job.continuation = a.uids[0];
        results.push_back(std::move(job));
        done = true;
      } else if (ready(*it)) {
        results = commute(std::move(job), pi, ev);
        done = true;
      }
    }
  }
  for (RuleName bookkeeping : {RuleName::Cut, RuleName::Exch}) {
    if (done) break;
    for (std::size_t i = 0; i < job.premises.size(); ++i) {
      if (rule_of(job.premises[i]).name != bookkeeping) continue;
      ev.premise = static_cast<int>(i);
      if (bookkeeping == RuleName::Cut) {
        ev.kind = ReductionKind::Expand;
        const int left = rule_of(job.premises[i]).left_len;
        const Advanced a = advance(job, i, {0, 1});
        job.premises[i].links[left] = {false, a.uids[1], 0};
        job.premises[i + 1].links[0] = {false, a.uids[0], left};
      } else {
        relay_exch(job, i, ev);
      }
      results.push_back(std::move(job));
      done = true;
      break;
    }
  }
  if (!done) {
    auto partner_of = [&](std::size_t i) -> std::optional<std::size_t> {
      const Premise& p = job.premises[i];
      const Link& l = p.links[apps_[p.node].principal];
      const std::size_t q = find(job, l.partner);
      const Premise& qp = job.premises[q];
      if (!rule_of(qp).logical() || apps_[qp.node].principal != l.index) return std::nullopt;
      return q;
    };
    std::optional<std::size_t> serve;
    std::optional<std::pair<std::size_t, std::size_t>> pair;
    if (opts_.policy == Policy::Demand) {
      std::size_t cur = 0;
      for (std::size_t guard = 0; guard <= job.premises.size(); ++guard) {
        const Premise& p = job.premises[cur];
        if (!rule_of(p).logical()) break;
        if (ready(p)) {
          serve = cur;
          break;
        }
        if (auto q = partner_of(cur)) {
          pair = {cur, *q};
          break;
        }
        const Link& l = p.links[apps_[p.node].principal];
        cur = find(job, l.partner);
      }
    } else {
      std::vector<std::size_t> ready_list;
      for (std::size_t i = 0; i < job.premises.size(); ++i)
        if (ready(job.premises[i])) ready_list.push_back(i);
      if (!ready_list.empty()) {
        const bool last = opts_.policy == Policy::Last || (opts_.policy == Policy::Alternate && job.toggle);
        serve = last ? ready_list.back() : ready_list.front();
        job.toggle = !job.toggle;
      } else {
        for (std::size_t i = 0; i < job.premises.size() && !pair; ++i) {
          if (!rule_of(job.premises[i]).logical()) continue;
          if (auto q = partner_of(i)) pair = {i, *q};
        }
      }
    }
    if (serve) {
      results = commute(std::move(job), *serve, ev);
    } else if (pair) {
      results = critical(std::move(job), pair->first, pair->second, ev);
    } else {
      blocked_.push_back(std::move(job));
      return false;
    }
  }

  for (Job& r : results) {
    ev.results.push_back(r.id);
    if (opts_.record_frontiers) ev.frontiers.push_back(frontier(r));
  }
  for (Job& r : results) queue_.push_back(std::move(r));
  depth_log_.push_back(depth);
  if (keep_events_) events_.push_back(std::move(ev));
  return true;
}

bool Normalizer::step() {
  if (status_ != RunStatus::Running) return false;
  for (;;) {
    while (!queue_.empty() && opts_.target_depth && queue_.front().depth > *opts_.target_depth) {
      parked_.push_back(std::move(queue_.front()));
      queue_.pop_front();
    }
    if (queue_.empty()) {
      status_ = !blocked_.empty() ? RunStatus::Blocked
                : parked_.empty() ? RunStatus::Terminated
                                  : RunStatus::Stable;
      return false;
    }
    if (steps_ >= opts_.budget) {
      status_ = RunStatus::BudgetExhausted;
      return false;
    }
    Job j = std::move(queue_.front());
    queue_.pop_front();
    if (process(std::move(j))) {
      ++steps_;
      return true;
    }
  }
}

void Normalizer::extend(std::size_t budget, std::optional<int> target_depth) {
  opts_.budget = budget;
  opts_.target_depth = target_depth;
  for (Job& j : parked_) queue_.push_back(std::move(j));
  parked_.clear();
  if (status_ != RunStatus::Blocked || !queue_.empty()) status_ = RunStatus::Running;
}

RunStatus Normalizer::run() {
  while (step()) {
  }
  return status_;
}

std::size_t Normalizer::active_jobs() const { return queue_.size() + parked_.size() + blocked_.size(); }

std::vector<const Normalizer::Job*> Normalizer::pending() const {
  std::vector<const Job*> out;
  for (const Job& j : queue_) out.push_back(&j);
  for (const Job& j : parked_) out.push_back(&j);
  for (const Job& j : blocked_) out.push_back(&j);
  return out;
}

std::optional<int> Normalizer::min_pending_depth() const {
  std::optional<int> m;
  for (const Job* j : pending())
    if (!m || j->depth < *m) m = j->depth;
  return m;
}

bool Normalizer::stable_at(int d) const {
  const auto m = min_pending_depth();
  return !m || *m > d;
}

bool Normalizer::consistent() const {
  for (const Job* j : pending())
    if (conclusion_sequent(*j) != pool_[j->emit].sequent) return false;
  return true;
}

TreeNode Normalizer::emit_prefix(int d) const {
  if (!stable_at(d))
    throw NotStable("prefix not stable at depth " + std::to_string(d) + ": a multicut sits at depth " +
                    std::to_string(*min_pending_depth()));
  auto build = [&](auto&& self, std::size_t at) -> TreeNode {
    const EmitNode& e = pool_[at];
    TreeNode t;
    t.sequent = e.sequent;
    if (static_cast<int>(e.pos.size()) >= d && !e.children.empty()) return t;
    t.rule = e.rule;
    for (std::size_t c : e.children) t.children.push_back(self(self, c));
    return t;
  };
  return build(build, 0);
}

namespace {

json sequent_json(const Sequent& s) {
  json a = json::array();
  for (const Formula& f : s) a.push_back(render(f));
  return a;
}

json job_json(const ProofGraph& g, const Normalizer::Job& j) {
  json ps = json::array();
  for (const auto& p : j.premises) {
    json links = json::array();
    for (const auto& l : p.links) links.push_back(l.external ? json(nullptr) : json::array({l.partner, l.index}));
    ps.push_back({{"uid", p.uid}, {"node", g.node(p.node).id}, {"source", p.source}, {"links", links}});
  }
  json c = json::array();
  for (const auto& o : j.conclusion) c.push_back(json::array({o.uid, o.index}));
  json out{{"id", j.id}, {"premises", ps}, {"conclusion", c}, {"emit", j.emit},
           {"depth", j.depth}, {"toggle", j.toggle}};
  out["continuation"] = j.continuation ? json(*j.continuation) : json(nullptr);
  return out;
}

Normalizer::Job job_from(const ProofGraph& g, const json& j) {
  Normalizer::Job out;
  out.id = j.at("id").get<int>();
  for (const json& p : j.at("premises")) {
    const auto node = g.find(p.at("node").get<std::string>());
    if (!node) throw SchemaError("/queue", "unknown node " + p.at("node").dump());
    Normalizer::Premise q{p.at("uid").get<int>(), *node, p.at("source").get<Position>(), {}};
    for (const json& l : p.at("links"))
      q.links.push_back(l.is_null() ? Normalizer::Link{} : Normalizer::Link{false, l[0].get<int>(), l[1].get<int>()});
    out.premises.push_back(std::move(q));
  }
  for (const json& o : j.at("conclusion")) out.conclusion.push_back({o[0].get<int>(), o[1].get<int>()});
  out.emit = j.at("emit").get<std::size_t>();
  out.depth = j.at("depth").get<int>();
  out.toggle = j.at("toggle").get<bool>();
  if (!j.at("continuation").is_null()) out.continuation = j.at("continuation").get<int>();
  return out;
}

}  // namespace

json Normalizer::checkpoint() const {
  json pool = json::array();
  for (const EmitNode& e : pool_) {
    pool.push_back({{"sequent", sequent_json(e.sequent)},
                    {"rule", e.rule ? rule_to_json(*e.rule) : json(nullptr)},
                    {"children", e.children},
                    {"pos", e.pos}});
  }
  auto jobs = [&](const auto& v) {
    json a = json::array();
    for (const Job& j : v) a.push_back(job_json(source_, j));
    return a;
  };
  json opts{{"budget", opts_.budget},
            {"autoWrap", opts_.auto_wrap},
            {"policy", policy_name(opts_.policy)},
            {"recordFrontiers", opts_.record_frontiers}};
  opts["targetDepth"] = opts_.target_depth ? json(*opts_.target_depth) : json(nullptr);
  json spine = json::array();
  for (std::size_t w : wrapper_) spine.push_back(source_.node(w).id);
  return {{"source", save_proof(source_)},
          {"options", opts},
          {"spine", spine},
          {"emitted", pool},
          {"queue", jobs(queue_)},
          {"parked", jobs(parked_)},
          {"blocked", jobs(blocked_)},
          {"depthLog", depth_log_},
          {"steps", steps_},
          {"starViolations", star_violations_},
          {"nextJob", next_job_},
          {"nextUid", next_uid_},
          {"status", status_name(status_)}};
}

Normalizer Normalizer::resume(const json& c) {
  Normalizer n;
  n.source_ = load_proof(c.at("source"));
  n.init();
  for (const json& id : c.at("spine")) {
    const auto w = n.source_.find(id.get<std::string>());
    if (!w) throw SchemaError("/spine", "unknown node " + id.get<std::string>());
    n.wrapper_.insert(*w);
  }
  const json& o = c.at("options");
  n.opts_.budget = o.at("budget").get<std::size_t>();
  n.opts_.auto_wrap = o.at("autoWrap").get<bool>();
  n.opts_.record_frontiers = o.at("recordFrontiers").get<bool>();
  const auto policy = policy_from_name(o.at("policy").get<std::string>());
  if (!policy) throw SchemaError("/options/policy", "unknown policy");
  n.opts_.policy = *policy;
  if (!o.at("targetDepth").is_null()) n.opts_.target_depth = o.at("targetDepth").get<int>();
  for (const json& e : c.at("emitted")) {
    EmitNode node;
    std::vector<std::string> items = e.at("sequent").get<std::vector<std::string>>();
    node.sequent = parse_sequent(items);
    if (!e.at("rule").is_null()) node.rule = rule_from_json(e.at("rule"), "/emitted");
    node.children = e.at("children").get<std::vector<std::size_t>>();
    node.pos = e.at("pos").get<Position>();
    n.pool_.push_back(std::move(node));
  }
  for (const json& j : c.at("queue")) n.queue_.push_back(job_from(n.source_, j));
  for (const json& j : c.at("parked")) n.parked_.push_back(job_from(n.source_, j));
  for (const json& j : c.at("blocked")) n.blocked_.push_back(job_from(n.source_, j));
  n.depth_log_ = c.at("depthLog").get<std::vector<int>>();
  n.steps_ = c.at("steps").get<std::size_t>();
  n.star_violations_ = c.at("starViolations").get<std::size_t>();
  n.next_job_ = c.at("nextJob").get<int>();
  n.next_uid_ = c.at("nextUid").get<int>();
  // a stopped run may continue under a larger budget or depth
  n.status_ = RunStatus::Running;
  return n;
}

}  // namespace mumall
