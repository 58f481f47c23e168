#pragma once

#include <string>
#include <vector>

#include "mumall/proof.hpp"
#include "mumall/proof_io.hpp"

namespace mumall::testing {

inline std::string fixture_path(const std::string& name) { return std::string(MUMALL_FIXTURES) + "/" + name + ".json"; }
inline ProofGraph fixture(const std::string& name) { return load_proof_file(fixture_path(name)); }

// figure-level derivations, every one locally valid
inline const std::vector<std::string>& all_fixtures() {
  static const std::vector<std::string> v{"fig_left", "fig_centre_nu", "fig_centre_mu", "ic_case1", "ic_case2",
                                          "ic_case3", "ic_case4",      "ic_remark",     "section3", "zip",
                                          "unit_cut"};
  return v;
}

// progressing fixtures that contain cuts
inline const std::vector<std::string>& progressing_cut_fixtures() {
  static const std::vector<std::string> v{"unit_cut", "ic_case2", "ic_case4", "ic_remark", "zip"};
  return v;
}

inline const std::vector<std::string>& identity_formulas() {
  static const std::vector<std::string> v{"1",           "bot",          "top",           "0",
                                          "mu X. X",     "nu X. X",      "mu X. X + 1",   "bot @ 1",
                                          "nu X. X * X", "(1 * 1) & bot", "mu X. nu Y. X + Y", "nu X. (X @ bot) & 1"};
  return v;
}

inline std::vector<Position> cut_positions(const TreeNode& t, Position at = {}) {
  std::vector<Position> out;
  if (t.rule && t.rule->name == RuleName::Cut) out.push_back(at);
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    at.push_back(static_cast<int>(i));
    const auto sub = cut_positions(t.children[i], at);
    out.insert(out.end(), sub.begin(), sub.end());
    at.pop_back();
  }
  return out;
}

}  // namespace mumall::testing
