#include "mumall/closure.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <queue>
#include <stdexcept>

namespace mumall {

std::vector<Formula> fl_successors(const Formula& f) {
  if (f.is_binary()) return {f.left(), f.right()};
  if (f.is_fixpoint()) return {unfold(f)};
  return {};
}

FlClosure FlClosure::compute(const std::vector<Formula>& seeds, TieBreak tie) {
  FlClosure c;
  std::deque<std::size_t> todo;
  auto add = [&](const Formula& f) {
    auto [it, fresh] = c.index_.emplace(f, c.formulas_.size());
    if (fresh) {
      c.formulas_.push_back(f);
      todo.push_back(it->second);
    }
    return it->second;
  };
  for (auto& s : seeds) {
    if (!s.closed()) throw ShapeError("closure seed is not closed: " + render(s));
    add(s);
  }
  std::vector<std::vector<std::size_t>> succ;
  while (!todo.empty()) {
    std::size_t i = todo.front();
    todo.pop_front();
    if (succ.size() <= i) succ.resize(i + 1);
    for (auto& g : fl_successors(Formula(c.formulas_[i]))) succ[i].push_back(add(g));
  }
  const std::size_t n = c.formulas_.size();
  succ.resize(n);

  c.reach_.assign(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<std::size_t> stack{a};
    c.reach_[a][a] = true;
    while (!stack.empty()) {
      std::size_t x = stack.back();
      stack.pop_back();
      for (std::size_t y : succ[x])
        if (!c.reach_[a][y]) {
          c.reach_[a][y] = true;
          stack.push_back(y);
        }
    }
  }
  c.scc_.assign(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    if (c.scc_[a] != n) continue;
    for (std::size_t b = a; b < n; ++b)
      if (c.reach_[a][b] && c.reach_[b][a]) c.scc_[b] = c.class_count_;
    ++c.class_count_;
  }

  // linearise the priority order on fixpoints, highest first
  std::vector<std::size_t> fix;
  for (std::size_t i = 0; i < n; ++i)
    if (c.formulas_[i].is_fixpoint()) fix.push_back(i);
  std::vector<std::string> key(n);
  for (std::size_t i : fix) key[i] = canonical_render(c.formulas_[i]);
  const std::size_t m = fix.size();
  std::vector<std::vector<std::size_t>> above(m);  // above[x]: y with priority(y) > priority(x)
  std::vector<std::size_t> pending(m, 0);
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y)
      if (x != y && c.lower_priority(c.formulas_[fix[x]], c.formulas_[fix[y]])) {
        above[y].push_back(x);
        ++pending[x];
      }
  auto cmp = [&](std::size_t x, std::size_t y) {
    const auto& kx = key[fix[x]];
    const auto& ky = key[fix[y]];
    return tie == TieBreak::Lexicographic ? kx > ky : kx < ky;
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(cmp)> ready(cmp);
  for (std::size_t x = 0; x < m; ++x)
    if (pending[x] == 0) ready.push(x);
  int r = -1;
  while (!ready.empty()) {
    std::size_t x = ready.top();
    ready.pop();
    const Formula& f = c.formulas_[fix[x]];
    int want = f.kind() == Kind::Nu ? 0 : 1;
    r = r < 0 ? want : r + 1;
    if ((r & 1) != want) ++r;
    c.order_.push_back(f);
    c.rank_.emplace(f, r);
    for (std::size_t y : above[x])
      if (--pending[y] == 0) ready.push(y);
  }
  if (c.order_.size() != m) throw std::logic_error("priority relation is cyclic");
  return c;
}

std::optional<std::size_t> FlClosure::index_of(const Formula& f) const {
  auto it = index_.find(f);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t FlClosure::need(const Formula& f) const {
  auto it = index_.find(f);
  if (it == index_.end()) throw std::out_of_range("formula outside the closure: " + render(f));
  return it->second;
}

bool FlClosure::leq(const Formula& a, const Formula& b) const { return reach_[need(b)][need(a)]; }

bool FlClosure::equivalent(const Formula& a, const Formula& b) const { return scc_[need(a)] == scc_[need(b)]; }

bool FlClosure::strictly_below(const Formula& a, const Formula& b) const {
  return leq(a, b) && !equivalent(a, b);
}

std::size_t FlClosure::class_of(const Formula& f) const { return scc_[need(f)]; }

bool FlClosure::lower_priority(const Formula& psi, const Formula& phi) const {
  if (strictly_below(psi, phi)) return true;
  return equivalent(psi, phi) && is_proper_subformula(phi, psi);
}

int FlClosure::rank(const Formula& fixpoint) const {
  auto it = rank_.find(fixpoint);
  if (it == rank_.end()) throw std::out_of_range("no rank for " + render(fixpoint));
  return it->second;
}

Parity FlClosure::parity(const Formula& fixpoint) const {
  return rank(fixpoint) % 2 == 0 ? Parity::Even : Parity::Odd;
}

}  // namespace mumall
