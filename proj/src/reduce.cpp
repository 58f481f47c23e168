#include <algorithm>
#include <stdexcept>

#include "mumall/cutelim.hpp"

namespace mumall {

const char* reduction_name(ReductionKind k) {
  switch (k) {
    case ReductionKind::Expand: return "expand";
    case ReductionKind::CommuteUnary: return "commuteUnary";
    case ReductionKind::CommuteBinary: return "commuteBinary";
    case ReductionKind::CommuteWith: return "commuteWith";
    case ReductionKind::CriticalUnit: return "criticalUnit";
    case ReductionKind::CriticalFix: return "criticalFix";
    case ReductionKind::CriticalTensorPar: return "criticalTensorPar";
    case ReductionKind::CriticalPlusWith: return "criticalPlusWith";
    case ReductionKind::Vanish: return "vanish";
  }
  return "?";
}

TreeNode permute_to(const TreeNode& t, const Sequent& target) {
  if (t.sequent == target) return t;
  const std::size_t n = target.size();
  if (n != t.sequent.size()) throw std::invalid_argument("permute_to: sequent lengths differ");
  // perm[i]: index in t.sequent of the formula shown at position i
  std::vector<int> perm(n, -1);
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (!used[k] && t.sequent[k] == target[i]) {
        used[k] = true;
        perm[i] = static_cast<int>(k);
        break;
      }
    }
    if (perm[i] < 0) throw std::invalid_argument("permute_to: not a permutation of " + render(t.sequent));
  }
  std::vector<int> swaps;
  for (std::size_t pass = 0; pass < n; ++pass) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (perm[i] > perm[i + 1]) {
        std::swap(perm[i], perm[i + 1]);
        swaps.push_back(static_cast<int>(i));
      }
    }
  }
  std::vector<Sequent> seqs{target};
  for (int i : swaps) {
    Sequent s = seqs.back();
    std::swap(s[i], s[i + 1]);
    seqs.push_back(std::move(s));
  }
  TreeNode cur = t;
  for (std::size_t k = swaps.size(); k-- > 0;) {
    TreeNode up;
    up.sequent = seqs[k];
    up.rule = Rule::exch(swaps[k]);
    up.children.push_back(std::move(cur));
    cur = std::move(up);
  }
  return cur;
}

TreeNode make_cut(const TreeNode& a, int ai, const TreeNode& b, int bi) {
  const Formula phi = a.sequent.at(ai);
  if (!(b.sequent.at(bi) == negate(phi))) throw std::invalid_argument("make_cut: formulas are not dual");
  Sequent sa = a.sequent;
  sa.erase(sa.begin() + ai);
  const int left = static_cast<int>(sa.size());
  sa.push_back(phi);
  Sequent sb = b.sequent;
  sb.erase(sb.begin() + bi);
  sb.insert(sb.begin(), b.sequent[bi]);
  TreeNode c;
  c.sequent.assign(sa.begin(), sa.end() - 1);
  c.sequent.insert(c.sequent.end(), sb.begin() + 1, sb.end());
  c.rule = Rule::cut(phi, left);
  c.children.push_back(permute_to(a, sa));
  c.children.push_back(permute_to(b, sb));
  return c;
}

namespace {

// descendant of occurrence k in premise `slot`, if any
std::optional<int> descendant(const RuleApplication& app, int slot, int k) {
  for (const Ancestor& a : app.ancestry[slot])
    if (a.from == k) return a.to;
  return std::nullopt;
}

// context split index inside a binary rule of the side premise, after cut formula k is replaced by `other` formulas
int shift_split(const Rule& r, int k, int principal, int other) {
  const int kk = principal >= 0 && principal < k ? k - 1 : k;
  return kk < r.left_len ? r.left_len - 1 + other : r.left_len;
}

// commute the cut below the last rule of one premise; `left` says which side carries the rule
std::optional<Reduct> commute(const TreeNode& cut, bool left) {
  const TreeNode& side = cut.children[left ? 0 : 1];
  const TreeNode& other = cut.children[left ? 1 : 0];
  const int L = cut.rule->left_len;
  const int k = left ? L : 0;
  const int other_len = static_cast<int>(other.sequent.size()) - 1;
  const Rule& r = *side.rule;
  const RuleApplication app = apply_rule(side.sequent, r);
  if (app.principal == k) return std::nullopt;
  if (r.name == RuleName::Exch && (r.index == k || r.index + 1 == k)) return std::nullopt;

  auto map_index = [&](int i) { return left ? i : L + i - 1; };
  Rule nr = r;
  ReductionKind kind = ReductionKind::CommuteUnary;
  switch (r.name) {
    case RuleName::Exch:
      nr.index = map_index(r.index);
      break;
    case RuleName::Tensor:
      nr.principal = map_index(r.principal);
      nr.left_len = shift_split(r, k, r.principal, left ? other_len : L);
      kind = ReductionKind::CommuteBinary;
      break;
    case RuleName::Cut:
      nr.left_len = shift_split(r, k, -1, left ? other_len : L);
      kind = ReductionKind::CommuteBinary;
      break;
    case RuleName::With:
      nr.principal = map_index(r.principal);
      kind = ReductionKind::CommuteWith;
      break;
    default:
      nr.principal = map_index(r.principal);
      break;
  }
  const RuleApplication napp = apply_rule(cut.sequent, nr);
  TreeNode out;
  out.sequent = cut.sequent;
  out.rule = nr;
  for (std::size_t s = 0; s < side.children.size(); ++s) {
    const TreeNode& prem = side.children[s];
    const auto d = descendant(app, static_cast<int>(s), k);
    if (!d) {
      out.children.push_back(permute_to(prem, napp.premises[s]));
      continue;
    }
    TreeNode c = left ? make_cut(prem, *d, other, 0) : make_cut(other, L, prem, *d);
    out.children.push_back(permute_to(c, napp.premises[s]));
  }
  return Reduct{kind, std::move(out)};
}

std::optional<Reduct> critical(const TreeNode& cut) {
  const TreeNode& a = cut.children[0];
  const TreeNode& b = cut.children[1];
  const int L = cut.rule->left_len;
  const Rule& ra = *a.rule;
  const Rule& rb = *b.rule;
  if (!ra.logical() || !rb.logical() || ra.principal != L || rb.principal != 0) return std::nullopt;
  auto is = [](const Rule& r, RuleName n) { return r.name == n; };
  if (is(ra, RuleName::One) && is(rb, RuleName::Bot)) return Reduct{ReductionKind::CriticalUnit, b.children[0]};
  if (is(ra, RuleName::Bot) && is(rb, RuleName::One)) return Reduct{ReductionKind::CriticalUnit, a.children[0]};
  if ((is(ra, RuleName::Mu) && is(rb, RuleName::Nu)) || (is(ra, RuleName::Nu) && is(rb, RuleName::Mu)))
    return Reduct{ReductionKind::CriticalFix, make_cut(a.children[0], L, b.children[0], 0)};
  if ((is(ra, RuleName::Plus0) || is(ra, RuleName::Plus1)) && is(rb, RuleName::With)) {
    const int i = is(ra, RuleName::Plus0) ? 0 : 1;
    return Reduct{ReductionKind::CriticalPlusWith, make_cut(a.children[0], L, b.children[i], 0)};
  }
  if (is(ra, RuleName::With) && (is(rb, RuleName::Plus0) || is(rb, RuleName::Plus1))) {
    const int i = is(rb, RuleName::Plus0) ? 0 : 1;
    return Reduct{ReductionKind::CriticalPlusWith, make_cut(a.children[i], L, b.children[0], 0)};
  }
  if (is(ra, RuleName::Tensor) && is(rb, RuleName::Par)) {
    const TreeNode& a0 = a.children[0];
    const TreeNode& a1 = a.children[1];
    const int last1 = static_cast<int>(a1.sequent.size()) - 1;
    TreeNode inner = make_cut(a1, last1, b.children[0], 1);
    TreeNode outer = make_cut(a0, static_cast<int>(a0.sequent.size()) - 1, inner, last1);
    return Reduct{ReductionKind::CriticalTensorPar, permute_to(outer, cut.sequent)};
  }
  if (is(ra, RuleName::Par) && is(rb, RuleName::Tensor)) {
    const TreeNode& b0 = b.children[0];
    const TreeNode& b1 = b.children[1];
    TreeNode inner = make_cut(a.children[0], L + 1, b1, static_cast<int>(b1.sequent.size()) - 1);
    TreeNode outer = make_cut(inner, L, b0, static_cast<int>(b0.sequent.size()) - 1);
    return Reduct{ReductionKind::CriticalTensorPar, permute_to(outer, cut.sequent)};
  }
  return std::nullopt;
}

}  // namespace

std::vector<Reduct> reduce_step(const TreeNode& t, const Position& cut_pos, std::optional<std::size_t> choice) {
  const TreeNode& cut = subtree(t, cut_pos);
  if (cut.open() || cut.rule->name != RuleName::Cut)
    throw std::invalid_argument("no cut at " + position_string(cut_pos));
  if (cut.children.size() != 2) throw std::invalid_argument("malformed cut at " + position_string(cut_pos));
  if (cut.children[0].open() || cut.children[1].open())
    throw NeedsMoreDepth("premise of the cut at " + position_string(cut_pos) + " is truncated");

  std::vector<Reduct> local;
  if (auto c = critical(cut)) {
    local.push_back(std::move(*c));
  } else {
    if (auto l = commute(cut, true)) local.push_back(std::move(*l));
    if (auto r = commute(cut, false)) local.push_back(std::move(*r));
  }
  if (choice) {
    if (*choice >= local.size())
      throw std::invalid_argument("choice " + std::to_string(*choice) + " out of range");
    local = {std::move(local[*choice])};
  }
  std::vector<Reduct> out;
  for (Reduct& r : local) {
    TreeNode whole = t;
    subtree(whole, cut_pos) = std::move(r.tree);
    out.push_back({r.kind, std::move(whole)});
  }
  return out;
}

}  // namespace mumall
