#include "mumall/proof.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace mumall {

namespace {

constexpr std::pair<RuleName, const char*> kRuleNames[] = {
    {RuleName::One, "one"},     {RuleName::Bot, "bot"},     {RuleName::Top, "top"},
    {RuleName::Tensor, "tensor"}, {RuleName::Par, "par"},   {RuleName::Plus0, "plus0"},
    {RuleName::Plus1, "plus1"}, {RuleName::With, "with"},   {RuleName::Mu, "mu"},
    {RuleName::Nu, "nu"},       {RuleName::Cut, "cut"},     {RuleName::Exch, "exch"},
    {RuleName::Open, "open"},
};

}  // namespace

const char* rule_name(RuleName r) {
  for (auto& [k, v] : kRuleNames)
    if (k == r) return v;
  return "?";
}

std::optional<RuleName> rule_from_name(std::string_view s) {
  for (auto& [k, v] : kRuleNames)
    if (s == v) return k;
  return std::nullopt;
}

bool Rule::logical() const {
  return name != RuleName::Cut && name != RuleName::Exch && name != RuleName::Open;
}

bool operator==(const Rule& a, const Rule& b) {
  if (a.name != b.name) return false;
  switch (a.name) {
    case RuleName::Cut:
      return a.left_len == b.left_len && a.cut_formula == b.cut_formula;
    case RuleName::Exch:
      return a.index == b.index;
    case RuleName::Tensor:
      return a.principal == b.principal && a.left_len == b.left_len;
    case RuleName::Open:
      return true;
    default:
      return a.principal == b.principal;
  }
}

std::string describe(const Rule& r) {
  std::string s = rule_name(r.name);
  switch (r.name) {
    case RuleName::Cut:
      return s + "(" + (r.cut_formula ? render(*r.cut_formula) : "?") + ", " + std::to_string(r.left_len) + ")";
    case RuleName::Exch:
      return s + "(" + std::to_string(r.index) + ")";
    case RuleName::Tensor:
      return s + "(" + std::to_string(r.principal) + ", " + std::to_string(r.left_len) + ")";
    case RuleName::Open:
      return s;
    default:
      return s + "(" + std::to_string(r.principal) + ")";
  }
}

namespace {

void expect_principal(const Sequent& s, const Rule& r, Kind k) {
  if (r.principal < 0 || r.principal >= static_cast<int>(s.size()))
    throw RuleError(std::string(rule_name(r.name)) + ": principal index " + std::to_string(r.principal) +
                    " out of range");
  const Formula& f = s[r.principal];
  if (f.kind() != k)
    throw RuleError(std::string(rule_name(r.name)) + ": principal formula " + render(f) + " is not a " +
                    kind_name(k));
}

// context occurrences keep their order; principal at p is replaced by `width` minors
std::vector<Ancestor> in_place(std::size_t n, int p, int width, StepEvent ev) {
  std::vector<Ancestor> out;
  for (int i = 0; i < static_cast<int>(n); ++i) {
    if (i < p) out.push_back({i, i, StepEvent::None});
    else if (i > p) out.push_back({i, i + width - 1, StepEvent::None});
    else
      for (int w = 0; w < width; ++w) out.push_back({i, p + w, ev});
  }
  return out;
}

Sequent replace_at(const Sequent& s, int p, const std::vector<Formula>& with) {
  Sequent out(s.begin(), s.begin() + p);
  out.insert(out.end(), with.begin(), with.end());
  out.insert(out.end(), s.begin() + p + 1, s.end());
  return out;
}

}  // namespace

RuleApplication apply_rule(const Sequent& s, const Rule& r) {
  RuleApplication app;
  const std::size_t n = s.size();
  switch (r.name) {
    case RuleName::Open:
      return app;
    case RuleName::One:
      if (n != 1 || s[0].kind() != Kind::One) throw RuleError("one: conclusion must be exactly 1");
      if (r.principal != 0) throw RuleError("one: principal index must be 0");
      app.principal = 0;
      return app;
    case RuleName::Top:
      expect_principal(s, r, Kind::Top);
      app.principal = r.principal;
      return app;
    case RuleName::Bot:
      expect_principal(s, r, Kind::Bot);
      app.principal = r.principal;
      app.premises.push_back(replace_at(s, r.principal, {}));
      app.ancestry.push_back(in_place(n, r.principal, 0, StepEvent::Steps));
      return app;
    case RuleName::Par: {
      expect_principal(s, r, Kind::Par);
      const Formula& f = s[r.principal];
      app.principal = r.principal;
      app.premises.push_back(replace_at(s, r.principal, {f.left(), f.right()}));
      app.ancestry.push_back(in_place(n, r.principal, 2, StepEvent::Steps));
      return app;
    }
    case RuleName::Plus0:
    case RuleName::Plus1: {
      expect_principal(s, r, Kind::Plus);
      const Formula& f = s[r.principal];
      app.principal = r.principal;
      app.premises.push_back(replace_at(s, r.principal, {r.name == RuleName::Plus0 ? f.left() : f.right()}));
      app.ancestry.push_back(in_place(n, r.principal, 1, StepEvent::Steps));
      return app;
    }
    case RuleName::With: {
      expect_principal(s, r, Kind::With);
      const Formula& f = s[r.principal];
      app.principal = r.principal;
      app.premises.push_back(replace_at(s, r.principal, {f.left()}));
      app.premises.push_back(replace_at(s, r.principal, {f.right()}));
      app.ancestry.push_back(in_place(n, r.principal, 1, StepEvent::Steps));
      app.ancestry.push_back(in_place(n, r.principal, 1, StepEvent::Steps));
      return app;
    }
    case RuleName::Mu:
    case RuleName::Nu: {
      expect_principal(s, r, r.name == RuleName::Mu ? Kind::Mu : Kind::Nu);
      app.principal = r.principal;
      app.premises.push_back(replace_at(s, r.principal, {unfold(s[r.principal])}));
      app.ancestry.push_back(in_place(n, r.principal, 1, StepEvent::Unfold));
      return app;
    }
    case RuleName::Tensor: {
      expect_principal(s, r, Kind::Tensor);
      const int p = r.principal;
      const int k = static_cast<int>(n) - 1;
      if (r.left_len < 0 || r.left_len > k)
        throw RuleError("tensor: leftLen " + std::to_string(r.left_len) + " out of range");
      const Formula& f = s[p];
      Sequent left, right;
      std::vector<Ancestor> la, ra;
      int c = 0;
      for (int i = 0; i < static_cast<int>(n); ++i) {
        if (i == p) continue;
        if (c < r.left_len) {
          la.push_back({i, static_cast<int>(left.size()), StepEvent::None});
          left.push_back(s[i]);
        } else {
          ra.push_back({i, static_cast<int>(right.size()), StepEvent::None});
          right.push_back(s[i]);
        }
        ++c;
      }
      la.push_back({p, static_cast<int>(left.size()), StepEvent::Steps});
      left.push_back(f.left());
      ra.push_back({p, static_cast<int>(right.size()), StepEvent::Steps});
      right.push_back(f.right());
      app.principal = p;
      app.premises = {left, right};
      app.ancestry = {la, ra};
      return app;
    }
    case RuleName::Cut: {
      if (!r.cut_formula) throw RuleError("cut: missing cut formula");
      if (!r.cut_formula->closed()) throw RuleError("cut: cut formula is not closed");
      if (r.left_len < 0 || r.left_len > static_cast<int>(n))
        throw RuleError("cut: leftLen " + std::to_string(r.left_len) + " out of range");
      Sequent left(s.begin(), s.begin() + r.left_len);
      left.push_back(*r.cut_formula);
      Sequent right{negate(*r.cut_formula)};
      right.insert(right.end(), s.begin() + r.left_len, s.end());
      std::vector<Ancestor> la, ra;
      for (int i = 0; i < static_cast<int>(n); ++i) {
        if (i < r.left_len) la.push_back({i, i, StepEvent::None});
        else ra.push_back({i, i - r.left_len + 1, StepEvent::None});
      }
      app.premises = {left, right};
      app.ancestry = {la, ra};
      return app;
    }
    case RuleName::Exch: {
      if (r.index < 0 || r.index + 1 >= static_cast<int>(n))
        throw RuleError("exch: index " + std::to_string(r.index) + " out of range");
      Sequent p = s;
      std::swap(p[r.index], p[r.index + 1]);
      std::vector<Ancestor> a;
      for (int i = 0; i < static_cast<int>(n); ++i) {
        int to = i == r.index ? i + 1 : i == r.index + 1 ? i - 1 : i;
        a.push_back({i, to, StepEvent::None});
      }
      app.premises = {p};
      app.ancestry = {a};
      return app;
    }
  }
  throw RuleError("unknown rule");
}

std::size_t ProofGraph::add_node(std::string id, Sequent sequent, Rule rule) {
  if (ids_.count(id)) throw std::invalid_argument("duplicate node id " + id);
  ids_.emplace(id, nodes_.size());
  nodes_.push_back({std::move(id), std::move(sequent), std::move(rule), {}});
  return nodes_.size() - 1;
}

void ProofGraph::set_premises(std::size_t node, std::vector<std::size_t> premises) {
  for (auto p : premises)
    if (p >= nodes_.size()) throw std::out_of_range("premise index out of range");
  nodes_.at(node).premises = std::move(premises);
}

std::optional<std::size_t> ProofGraph::find(const std::string& id) const {
  auto it = ids_.find(id);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::size_t ProofGraph::max_sequent_length() const {
  std::size_t m = 0;
  for (auto& n : nodes_) m = std::max(m, n.sequent.size());
  return m;
}

bool ProofGraph::has_cut() const {
  return std::any_of(nodes_.begin(), nodes_.end(), [](auto& n) { return n.rule.name == RuleName::Cut; });
}

std::vector<Defect> validate_local(const ProofGraph& g) {
  std::vector<Defect> out;
  if (g.size() == 0) {
    out.push_back({"", "empty proof graph"});
    return out;
  }
  for (auto& n : g.nodes()) {
    for (auto& f : n.sequent)
      if (!f.closed()) out.push_back({n.id, "formula " + render(f) + " is not closed"});
    RuleApplication app;
    try {
      app = apply_rule(n.sequent, n.rule);
    } catch (const std::exception& e) {
      out.push_back({n.id, e.what()});
      continue;
    }
    if (app.premises.size() != n.premises.size()) {
      out.push_back({n.id, std::string(rule_name(n.rule.name)) + " expects " + std::to_string(app.premises.size()) +
                               " premises, found " + std::to_string(n.premises.size())});
      continue;
    }
    for (std::size_t i = 0; i < app.premises.size(); ++i) {
      const ProofNode& p = g.node(n.premises[i]);
      if (p.sequent != app.premises[i])
        out.push_back({n.id, "premise " + std::to_string(i) + " (" + p.id + ") concludes [" + render(p.sequent) +
                                 "], expected [" + render(app.premises[i]) + "]"});
    }
  }
  return out;
}

std::string position_string(const Position& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p[i]);
  }
  return s + "]";
}

bool operator==(const TreeNode& a, const TreeNode& b) {
  return a.sequent == b.sequent && a.rule == b.rule && a.children == b.children;
}

TreeNode unfold_to_depth(const ProofGraph& g, int depth) {
  std::function<TreeNode(std::size_t, int)> go = [&](std::size_t id, int d) {
    const ProofNode& n = g.node(id);
    TreeNode t;
    t.sequent = n.sequent;
    if (d >= depth && !n.premises.empty()) return t;
    t.rule = n.rule;
    for (auto p : n.premises) t.children.push_back(go(p, d + 1));
    return t;
  };
  return go(g.root(), 0);
}

std::vector<Defect> validate_tree(const TreeNode& t) {
  std::vector<Defect> out;
  Position pos;
  std::function<void(const TreeNode&)> go = [&](const TreeNode& n) {
    if (n.open()) {
      if (!n.children.empty()) out.push_back({position_string(pos), "open leaf with children"});
      return;
    }
    RuleApplication app;
    try {
      app = apply_rule(n.sequent, *n.rule);
    } catch (const std::exception& e) {
      out.push_back({position_string(pos), e.what()});
      return;
    }
    if (app.premises.size() != n.children.size()) {
      out.push_back({position_string(pos), "wrong number of premises"});
      return;
    }
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      if (n.children[i].sequent != app.premises[i])
        out.push_back({position_string(pos), "premise " + std::to_string(i) + " concludes [" +
                                                 render(n.children[i].sequent) + "], expected [" +
                                                 render(app.premises[i]) + "]"});
      pos.push_back(static_cast<int>(i));
      go(n.children[i]);
      pos.pop_back();
    }
  };
  go(t);
  return out;
}

const TreeNode& subtree(const TreeNode& t, const Position& p) {
  const TreeNode* cur = &t;
  for (int i : p) {
    if (i < 0 || i >= static_cast<int>(cur->children.size()))
      throw std::out_of_range("position " + position_string(p) + " outside the tree");
    cur = &cur->children[i];
  }
  return *cur;
}

TreeNode& subtree(TreeNode& t, const Position& p) {
  return const_cast<TreeNode&>(subtree(static_cast<const TreeNode&>(t), p));
}

bool contains_cut(const TreeNode& t) { return count_rule(t, RuleName::Cut) > 0; }

std::size_t count_rule(const TreeNode& t, RuleName r) {
  std::size_t c = t.rule && t.rule->name == r ? 1 : 0;
  for (auto& ch : t.children) c += count_rule(ch, r);
  return c;
}

int tree_depth(const TreeNode& t) {
  int d = 0;
  for (auto& c : t.children) d = std::max(d, 1 + tree_depth(c));
  return d;
}

ProofGraph tree_to_graph(const TreeNode& t) {
  ProofGraph g;
  std::function<std::size_t(const TreeNode&, const std::string&)> go = [&](const TreeNode& n,
                                                                           const std::string& id) {
    std::size_t me = g.add_node(id, n.sequent, n.rule.value_or(Rule::open()));
    std::vector<std::size_t> ps;
    for (std::size_t i = 0; i < n.children.size(); ++i) ps.push_back(go(n.children[i], id + "." + std::to_string(i)));
    g.set_premises(me, ps);
    return me;
  };
  g.set_root(go(t, "t"));
  return g;
}

namespace {

struct SequentKey {
  bool operator()(const Sequent& a, const Sequent& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == b[i]) continue;
      return canonical_render(a[i]) < canonical_render(b[i]);
    }
    return false;
  }
};

class IdentityBuilder {
 public:
  ProofGraph graph;

  std::size_t pair(const Formula& a, const Formula& b) {
    Sequent s{a, b};
    if (auto it = pairs_.find(s); it != pairs_.end()) return it->second;
    const int neg = is_negative(a.kind()) ? 0 : 1;
    const int pos = 1 - neg;
    const Formula& n = s[neg];
    switch (n.kind()) {
      case Kind::Top: {
        std::size_t me = fresh(s, Rule::top(neg), pairs_);
        return me;
      }
      case Kind::Bot: {
        std::size_t me = fresh(s, Rule::bot(neg), pairs_);
        graph.set_premises(me, {one()});
        return me;
      }
      case Kind::Par: {
        std::size_t me = fresh(s, Rule::par(neg), pairs_);
        Sequent mid = replace(s, neg, {n.left(), n.right()});
        std::size_t m = intermediate(mid, Rule::tensor(neg == 0 ? 2 : 0, 1), [&](std::size_t node) {
          graph.set_premises(node, {pair(n.left(), s[pos].left()), pair(n.right(), s[pos].right())});
        });
        graph.set_premises(me, {m});
        return me;
      }
      case Kind::With: {
        std::size_t me = fresh(s, Rule::with(neg), pairs_);
        std::vector<std::size_t> ps;
        for (int side = 0; side < 2; ++side) {
          const Formula& part = side == 0 ? n.left() : n.right();
          Sequent mid = replace(s, neg, {part});
          ps.push_back(intermediate(mid, Rule::plus(pos, side), [&, side](std::size_t node) {
            const Formula& other = side == 0 ? s[pos].left() : s[pos].right();
            graph.set_premises(node, {neg == 0 ? pair(part, other) : pair(other, part)});
          }));
        }
        graph.set_premises(me, ps);
        return me;
      }
      case Kind::Nu: {
        std::size_t me = fresh(s, Rule::nu(neg), pairs_);
        Sequent mid = replace(s, neg, {unfold(n)});
        std::size_t m = intermediate(mid, Rule::mu(pos), [&](std::size_t node) {
          Sequent last = replace(mid, pos, {unfold(s[pos])});
          graph.set_premises(node, {pair(last[0], last[1])});
        });
        graph.set_premises(me, {m});
        return me;
      }
      default:
        throw ShapeError("identity: unexpected formula " + render(n));
    }
  }

 private:
  std::size_t fresh(const Sequent& s, Rule r, std::map<Sequent, std::size_t, SequentKey>& memo) {
    std::size_t me = graph.add_node("n" + std::to_string(graph.size()), s, r);
    memo.emplace(s, me);
    return me;
  }

  template <class Fill>
  std::size_t intermediate(const Sequent& s, Rule r, Fill fill) {
    auto& memo = mids_[describe(r)];
    if (auto it = memo.find(s); it != memo.end()) return it->second;
    std::size_t me = fresh(s, r, memo);
    fill(me);
    return me;
  }

  std::size_t one() {
    if (one_) return *one_;
    one_ = graph.add_node("n" + std::to_string(graph.size()), {Formula::one()}, Rule::one());
    return *one_;
  }

  static Sequent replace(const Sequent& s, int p, const std::vector<Formula>& with) {
    Sequent out(s.begin(), s.begin() + p);
    out.insert(out.end(), with.begin(), with.end());
    out.insert(out.end(), s.begin() + p + 1, s.end());
    return out;
  }

  std::map<Sequent, std::size_t, SequentKey> pairs_;
  std::map<std::string, std::map<Sequent, std::size_t, SequentKey>> mids_;
  std::optional<std::size_t> one_;
};

}  // namespace

ProofGraph identity_proof(const Formula& phi) {
  if (!phi.closed()) throw ShapeError("identity of an open formula");
  IdentityBuilder b;
  std::size_t root = b.pair(negate(phi), phi);
  b.graph.set_root(root);
  return std::move(b.graph);
}

namespace {

std::string unique_id(const ProofGraph& g, std::string id) {
  std::string base = id;
  for (int i = 1; g.find(id); ++i) id = base + "'" + std::to_string(i);
  return id;
}

// copies `src` into `dst` prefixing ids; returns the index of src's root in dst
std::size_t splice(ProofGraph& dst, const ProofGraph& src, const std::string& prefix) {
  std::vector<std::size_t> map(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    auto& n = src.node(i);
    map[i] = dst.add_node(unique_id(dst, prefix + n.id), n.sequent, n.rule);
  }
  for (std::size_t i = 0; i < src.size(); ++i) {
    std::vector<std::size_t> ps;
    for (auto p : src.node(i).premises) ps.push_back(map[p]);
    dst.set_premises(map[i], ps);
  }
  return map[src.root()];
}

}  // namespace

ProofGraph compose_cut(const ProofGraph& d, const std::vector<CutPiece>& cuts) {
  const Sequent& concl = d.conclusion();
  if (cuts.size() > concl.size()) throw std::invalid_argument("compose_cut: more cut formulas than conclusion formulas");
  const std::size_t gamma = concl.size() - cuts.size();
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    if (concl[gamma + i] != cuts[i].formula)
      throw std::invalid_argument("compose_cut: conclusion formula " + std::to_string(gamma + i) + " is " +
                                  render(concl[gamma + i]) + ", expected " + render(cuts[i].formula));
    const Sequent& e = cuts[i].proof.conclusion();
    if (e.empty() || e[0] != negate(cuts[i].formula))
      throw std::invalid_argument("compose_cut: piece " + std::to_string(i) + " does not start with " +
                                  render(negate(cuts[i].formula)));
  }
  ProofGraph g;
  std::size_t top = splice(g, d, "");
  Sequent cur = concl;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    const std::string tag = "cut" + std::to_string(i);
    // move the cut formula from position gamma to the end
    for (std::size_t q = gamma; q + 1 < cur.size(); ++q) {
      std::swap(cur[q], cur[q + 1]);
      std::size_t x = g.add_node(unique_id(g, tag + ".x" + std::to_string(q - gamma)), cur,
                                 Rule::exch(static_cast<int>(q)));
      g.set_premises(x, {top});
      top = x;
    }
    std::size_t piece = splice(g, cuts[i].proof, "e" + std::to_string(i) + "/");
    Sequent next(cur.begin(), cur.end() - 1);
    const Sequent& e = cuts[i].proof.conclusion();
    next.insert(next.end(), e.begin() + 1, e.end());
    std::size_t c = g.add_node(unique_id(g, tag), next, Rule::cut(cuts[i].formula, static_cast<int>(cur.size()) - 1));
    g.set_premises(c, {top, piece});
    top = c;
    cur = next;
  }
  g.set_root(top);
  return g;
}

ProofGraph wrap_with_identities(const ProofGraph& d) {
  std::vector<CutPiece> cuts;
  for (auto& f : d.conclusion()) cuts.push_back({identity_proof(f), f});
  return compose_cut(d, cuts);
}

std::size_t node_at(const ProofGraph& g, const Position& p) {
  std::size_t cur = g.root();
  for (int s : p) {
    const auto& ps = g.node(cur).premises;
    if (s < 0 || s >= static_cast<int>(ps.size()))
      throw std::out_of_range("position " + position_string(p) + " leaves the graph");
    cur = ps[s];
  }
  return cur;
}

}  // namespace mumall
