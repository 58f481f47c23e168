#include "mumall/random.hpp"

#include "mumall/cutelim.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace mumall {

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

template <class T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(v.size()) - 1))];
}

Formula random_unit(Rng& rng) {
  switch (uniform(rng, 0, 3)) {
    case 0: return Formula::one();
    case 1: return Formula::bot();
    case 2: return Formula::zero();
    default: return Formula::top();
  }
}

Formula gen(Rng& rng, int size, std::vector<std::string>& scope) {
  if (size <= 0) {
    if (!scope.empty() && coin(rng, 0.7)) return Formula::free_var(scope[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(scope.size()) - 1))]);
    return random_unit(rng);
  }
  const int r = uniform(rng, 0, 9);
  if (r < 3) {
    const std::string var = "X" + std::to_string(scope.size());
    scope.push_back(var);
    Formula body = gen(rng, size - 1, scope);
    scope.pop_back();
    const auto fv = free_variables(body);
    if (coin(rng, 0.8) && std::find(fv.begin(), fv.end(), var) == fv.end()) {
      const Formula x = Formula::free_var(var);
      body = coin(rng, 0.5) ? Formula::binary(static_cast<Kind>(uniform(rng, 6, 9)), x, body)
                            : Formula::binary(static_cast<Kind>(uniform(rng, 6, 9)), body, x);
    }
    return Formula::fixpoint(coin(rng, 0.5) ? Kind::Mu : Kind::Nu, var, body);
  }
  const int left = uniform(rng, 0, size - 1);
  const Formula a = gen(rng, left, scope);
  const Formula b = gen(rng, size - 1 - left, scope);
  return Formula::binary(static_cast<Kind>(uniform(rng, 6, 9)), a, b);
}

std::vector<Rule> candidate_rules(Rng& rng, const Sequent& s, const GraphGenOptions& opts) {
  std::vector<Rule> out;
  const int n = static_cast<int>(s.size());
  if (n == 1 && s[0].kind() == Kind::One) out.push_back(Rule::one());
  for (int i = 0; i < n; ++i)
    if (s[i].kind() == Kind::Top) out.push_back(Rule::top(i));
  if (!out.empty() && coin(rng, 0.8)) return out;
  for (int i = 0; i < n; ++i) {
    switch (s[i].kind()) {
      case Kind::Bot: out.push_back(Rule::bot(i)); break;
      case Kind::Par: out.push_back(Rule::par(i)); break;
      case Kind::With: out.push_back(Rule::with(i)); break;
      case Kind::Mu: out.push_back(Rule::mu(i)); break;
      case Kind::Nu: out.push_back(Rule::nu(i)); break;
      case Kind::Plus: out.push_back(Rule::plus(i, uniform(rng, 0, 1))); break;
      case Kind::Tensor: out.push_back(Rule::tensor(i, uniform(rng, 0, n - 1))); break;
      default: break;
    }
  }
  if (n > 1 && coin(rng, 0.2)) out.push_back(Rule::exch(uniform(rng, 0, n - 2)));
  if (opts.allow_cut && coin(rng, 0.1)) out.push_back(Rule::cut(random_formula(rng, 2), uniform(rng, 0, n)));
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

TreeNode close_with(const Sequent& c, const Rule& r, std::vector<TreeNode> children) {
  const RuleApplication app = apply_rule(c, r);
  TreeNode t;
  t.sequent = c;
  t.rule = r;
  for (std::size_t i = 0; i < children.size(); ++i) t.children.push_back(permute_to(children[i], app.premises[i]));
  return t;
}

}  // namespace

Formula random_formula(Rng& rng, int size) {
  std::vector<std::string> scope;
  return gen(rng, size, scope);
}

Formula random_preformula(Rng& rng, int size, const std::string& var) {
  std::vector<std::string> scope{var};
  return gen(rng, size, scope);
}

std::optional<ProofGraph> try_random_graph(Rng& rng, const GraphGenOptions& opts) {
  struct Draft {
    Sequent sequent;
    Rule rule;
    std::vector<std::size_t> premises;
  };
  std::vector<Draft> nodes;
  Sequent root;
  const int width = uniform(rng, 1, static_cast<int>(std::min<std::size_t>(2, opts.max_sequent)));
  for (int i = 0; i < width; ++i) root.push_back(random_formula(rng, uniform(rng, 1, opts.formula_size)));
  nodes.push_back({root, Rule::open(), {}});
  for (std::size_t x = 0; x < nodes.size(); ++x) {
    bool done = false;
    for (const Rule& r : candidate_rules(rng, nodes[x].sequent, opts)) {
      const RuleApplication app = apply_rule(nodes[x].sequent, r);
      std::vector<std::optional<std::size_t>> prem;  // none: a new node
      std::size_t fresh = 0;
      bool ok = true;
      for (const Sequent& p : app.premises) {
        if (p.size() > opts.max_sequent) {
          ok = false;
          break;
        }
        std::vector<std::size_t> same;
        for (std::size_t y = 0; y < nodes.size(); ++y)
          if (nodes[y].sequent == p) same.push_back(y);
        const bool room = nodes.size() + fresh < opts.max_nodes;
        if (!same.empty() && (!room || coin(rng, 0.8))) {
          prem.push_back(pick(rng, same));
        } else if (room) {
          prem.push_back(std::nullopt);
          ++fresh;
        } else {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      std::vector<std::size_t> ids;
      for (std::size_t i = 0; i < prem.size(); ++i) {
        if (prem[i]) {
          ids.push_back(*prem[i]);
        } else {
          ids.push_back(nodes.size());
          nodes.push_back({app.premises[i], Rule::open(), {}});
        }
      }
      nodes[x].rule = r;
      nodes[x].premises = ids;
      done = true;
      break;
    }
    if (!done) return std::nullopt;
  }
  ProofGraph g;
  for (std::size_t i = 0; i < nodes.size(); ++i) g.add_node("n" + std::to_string(i), nodes[i].sequent, nodes[i].rule);
  for (std::size_t i = 0; i < nodes.size(); ++i) g.set_premises(i, nodes[i].premises);
  g.set_root(0);
  if (!validate_local(g).empty()) return std::nullopt;
  return g;
}

ProofGraph random_graph(Rng& rng, const GraphGenOptions& opts) {
  for (int i = 0; i < opts.attempts; ++i)
    if (auto g = try_random_graph(rng, opts)) return *g;
  throw std::runtime_error("random_graph: no graph after " + std::to_string(opts.attempts) + " attempts");
}

namespace {

struct TreeGen {
  Rng& rng;
  std::vector<Formula> folds;  // fixpoints whose unfolding may appear in a leaf

  Formula side_formula() {
    if (!folds.empty() && coin(rng, 0.4)) return unfold(pick(rng, folds));
    if (coin(rng, 0.3)) {
      Formula f = random_formula(rng, 2);
      while (!f.is_fixpoint()) f = random_formula(rng, 3);
      folds.push_back(f);
      return unfold(f);
    }
    return random_formula(rng, uniform(rng, 0, 2));
  }

  // ⊤ axiom on `fixed` plus a few random formulas, ⊤ placed at random
  TreeNode top_leaf(Sequent fixed, int extra) {
    for (int i = 0; i < extra; ++i) fixed.push_back(side_formula());
    std::shuffle(fixed.begin(), fixed.end(), rng);
    const int p = uniform(rng, 0, static_cast<int>(fixed.size()));
    fixed.insert(fixed.begin() + p, Formula::top());
    TreeNode t;
    t.sequent = fixed;
    t.rule = Rule::top(p);
    return t;
  }

  TreeNode leaf() {
    if (coin(rng, 0.3)) {
      TreeNode t;
      t.sequent = {Formula::one()};
      t.rule = Rule::one();
      return t;
    }
    return top_leaf({}, uniform(rng, 0, 2));
  }

  int any_index(const TreeNode& t) { return uniform(rng, 0, static_cast<int>(t.sequent.size()) - 1); }

  static Sequent without(const Sequent& s, int i) {
    Sequent r = s;
    r.erase(r.begin() + i);
    return r;
  }

  Sequent with_at(Sequent s, const Formula& f) {
    const int p = uniform(rng, 0, static_cast<int>(s.size()));
    s.insert(s.begin() + p, f);
    return s;
  }

  static int index_of(const Sequent& s, const Formula& f) {
    return static_cast<int>(std::find(s.begin(), s.end(), f) - s.begin());
  }

  static Sequent remove_one(const Sequent& s, const Formula& f) { return without(s, index_of(s, f)); }

  // proof of A⊥, ... ending in the rule dual to the one introducing A
  TreeNode dual_intro(const Formula& a) {
    const Formula d = negate(a);
    switch (d.kind()) {
      case Kind::One: {
        TreeNode t;
        t.sequent = {d};
        t.rule = Rule::one();
        return t;
      }
      case Kind::Bot: {
        TreeNode up = leaf();
        Sequent c = up.sequent;
        c.insert(c.begin(), d);
        return close_with(c, Rule::bot(0), {up});
      }
      case Kind::Par: {
        TreeNode up = top_leaf({d.left(), d.right()}, uniform(rng, 0, 1));
        Sequent c = remove_one(remove_one(up.sequent, d.left()), d.right());
        c.insert(c.begin(), d);
        return close_with(c, Rule::par(0), {up});
      }
      case Kind::Tensor: {
        TreeNode l = top_leaf({d.left()}, 0);
        TreeNode r = top_leaf({d.right()}, 0);
        return close_with({d, Formula::top(), Formula::top()}, Rule::tensor(0, 1), {l, r});
      }
      case Kind::With: {
        const Formula extra = side_formula();
        TreeNode l = top_leaf({d.left(), extra}, 0);
        TreeNode r = top_leaf({d.right(), extra}, 0);
        return close_with({d, Formula::top(), extra}, Rule::with(0), {l, r});
      }
      case Kind::Plus: {
        const int side = uniform(rng, 0, 1);
        TreeNode up = top_leaf({side == 0 ? d.left() : d.right()}, uniform(rng, 0, 1));
        Sequent c = remove_one(up.sequent, side == 0 ? d.left() : d.right());
        c.insert(c.begin(), d);
        return close_with(c, Rule::plus(0, side), {up});
      }
      case Kind::Mu:
      case Kind::Nu: {
        TreeNode up = top_leaf({unfold(d)}, uniform(rng, 0, 1));
        Sequent c = remove_one(up.sequent, unfold(d));
        c.insert(c.begin(), d);
        return close_with(c, d.kind() == Kind::Mu ? Rule::mu(0) : Rule::nu(0), {up});
      }
      default:
        return top_leaf({d}, uniform(rng, 0, 1));
    }
  }

  TreeNode cut(const TreeNode& t) {
    int i = any_index(t);
    if (t.rule && t.rule->logical() && coin(rng, 0.5)) i = t.rule->principal;
    const Formula a = t.sequent[i];
    TreeNode other = coin(rng, 0.75) ? dual_intro(a) : top_leaf({negate(a)}, uniform(rng, 0, 1));
    const int j = index_of(other.sequent, negate(a));
    if (coin(rng, 0.5)) {
      Sequent c = without(t.sequent, i);
      const Sequent r = without(other.sequent, j);
      const int left = static_cast<int>(c.size());
      c.insert(c.end(), r.begin(), r.end());
      return close_with(c, Rule::cut(a, left), {t, other});
    }
    Sequent c = without(other.sequent, j);
    const Sequent r = without(t.sequent, i);
    const int left = static_cast<int>(c.size());
    c.insert(c.end(), r.begin(), r.end());
    return close_with(c, Rule::cut(negate(a), left), {other, t});
  }

  TreeNode grow(std::vector<TreeNode>& pool) {
    const TreeNode t = pick(rng, pool);
    const int n = static_cast<int>(t.sequent.size());
    switch (uniform(rng, 0, 9)) {
      case 0: {
        Sequent c = with_at(t.sequent, Formula::bot());
        return close_with(c, Rule::bot(index_of(c, Formula::bot())), {t});
      }
      case 1: {
        if (n < 2) break;
        const int i = any_index(t);
        const Formula a = t.sequent[i];
        const Sequent rest = without(t.sequent, i);
        const int j = uniform(rng, 0, n - 2);
        const Formula f = Formula::par(a, rest[j]);
        Sequent c = without(rest, j);
        const int p = uniform(rng, 0, static_cast<int>(c.size()));
        c.insert(c.begin() + p, f);
        return close_with(c, Rule::par(p), {t});
      }
      case 2: {
        const int i = any_index(t);
        const int side = uniform(rng, 0, 1);
        const Formula b = random_formula(rng, 1);
        Sequent c = t.sequent;
        c[i] = side == 0 ? Formula::plus(t.sequent[i], b) : Formula::plus(b, t.sequent[i]);
        return close_with(c, Rule::plus(i, side), {t});
      }
      case 3: {
        const int i = any_index(t);
        Sequent other = t.sequent;
        other[i] = Formula::top();
        TreeNode r = coin(rng, 0.5) ? t : close_with(other, Rule::top(i), {});
        Sequent c = t.sequent;
        c[i] = Formula::with(t.sequent[i], r.sequent[i]);
        return close_with(c, Rule::with(i), {t, r});
      }
      case 4:
      case 7: {
        const int i = any_index(t);
        std::optional<Formula> f;
        for (const Formula& g : folds)
          if (unfold(g) == t.sequent[i]) f = g;
        if (!f) f = Formula::fixpoint(coin(rng, 0.5) ? Kind::Mu : Kind::Nu, "V", t.sequent[i]);
        Sequent c = t.sequent;
        c[i] = *f;
        return close_with(c, f->kind() == Kind::Mu ? Rule::mu(i) : Rule::nu(i), {t});
      }
      case 5: {
        const TreeNode u = pick(rng, pool);
        const int i = any_index(t);
        const int j = any_index(u);
        Sequent c = without(t.sequent, i);
        const Sequent r = without(u.sequent, j);
        const int left = static_cast<int>(c.size());
        c.insert(c.end(), r.begin(), r.end());
        const int p = uniform(rng, 0, static_cast<int>(c.size()));
        c.insert(c.begin() + p, Formula::tensor(t.sequent[i], u.sequent[j]));
        return close_with(c, Rule::tensor(p, left), {t, u});
      }
      case 6: {
        if (n < 2) break;
        const int i = uniform(rng, 0, n - 2);
        Sequent c = t.sequent;
        std::swap(c[i], c[i + 1]);
        return close_with(c, Rule::exch(i), {t});
      }
      default:
        return cut(t);
    }
    return leaf();
  }
};

}  // namespace

TreeNode random_cut_tree(Rng& rng, int operations) {
  TreeGen gen{rng, {}};
  std::vector<TreeNode> pool;
  for (int i = 0; i < 3; ++i) pool.push_back(gen.leaf());
  for (int i = 0; i < operations; ++i) {
    TreeNode t = gen.grow(pool);
    if (t.sequent.size() <= 5) pool.push_back(std::move(t));
  }
  std::vector<TreeNode> with_cut;
  for (const TreeNode& t : pool)
    if (contains_cut(t)) with_cut.push_back(t);
  if (!with_cut.empty() && coin(rng, 0.5)) return pick(rng, with_cut);
  return gen.cut(pick(rng, pool));
}

std::optional<OmegaWord> random_thread(Rng& rng, const Formula& start, std::size_t max_len) {
  std::vector<Formula> walk{start};
  std::map<std::string, std::vector<std::size_t>> seen;
  seen[canonical_render(start)].push_back(0);
  while (walk.size() <= max_len) {
    const std::vector<Formula> next = fl_successors(walk.back());
    if (next.empty()) return std::nullopt;
    const Formula f = pick(rng, next);
    auto& at = seen[canonical_render(f)];
    if (!at.empty() && (coin(rng, 0.4) || walk.size() == max_len)) {
      const std::size_t k = pick(rng, at);
      OmegaWord w;
      w.stem.assign(walk.begin(), walk.begin() + static_cast<std::ptrdiff_t>(k));
      w.cycle.assign(walk.begin() + static_cast<std::ptrdiff_t>(k), walk.end());
      return w;
    }
    at.push_back(walk.size());
    walk.push_back(f);
  }
  return std::nullopt;
}

}  // namespace mumall
