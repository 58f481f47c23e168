#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mumall {

enum class Kind : std::uint8_t { Free, Bound, One, Bot, Zero, Top, Tensor, Par, Plus, With, Mu, Nu };

// Locally nameless: bound variables are de Bruijn indices, binders keep
// their source name only as a rendering hint.
class Formula {
 public:
  Formula();  // the unit 1

  static Formula free_var(std::string name);
  static Formula bound_var(std::uint32_t index);
  static Formula one();
  static Formula bot();
  static Formula zero();
  static Formula top();
  static Formula tensor(const Formula& a, const Formula& b);
  static Formula par(const Formula& a, const Formula& b);
  static Formula plus(const Formula& a, const Formula& b);
  static Formula with(const Formula& a, const Formula& b);
  static Formula binary(Kind k, const Formula& a, const Formula& b);
  // binds the free occurrences of `var` in `body`
  static Formula mu(const std::string& var, const Formula& body);
  static Formula nu(const std::string& var, const Formula& body);
  static Formula fixpoint(Kind k, const std::string& var, const Formula& body);
  // body given in de Bruijn form already
  static Formula raw_fixpoint(Kind k, std::string hint, const Formula& body);

  Kind kind() const;
  bool is_fixpoint() const { return kind() == Kind::Mu || kind() == Kind::Nu; }
  bool is_binary() const;
  bool is_unit() const;

  const Formula& left() const;
  const Formula& right() const;
  const Formula& body() const;
  const std::string& name() const;
  std::uint32_t index() const;

  std::size_t size() const;
  std::size_t hash() const;
  bool closed() const;
  bool has_free() const;
  std::uint32_t loose() const;  // 1 + largest dangling de Bruijn index, 0 if none

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

  struct Node;

 private:
  explicit Formula(std::shared_ptr<const Node> n);
  explicit Formula(std::nullptr_t);
  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

using Sequent = std::vector<Formula>;

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t offset);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class FreeVariableError : public std::runtime_error {
 public:
  explicit FreeVariableError(const std::string& var);
  const std::string& variable() const { return var_; }

 private:
  std::string var_;
};

class ShapeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Kind dual(Kind k);
bool is_negative(Kind k);  // bot, par, with, nu, top
const char* kind_name(Kind k);

Formula negate(const Formula& f);
// replaces the free variable `var` by the closed formula `value`
Formula substitute(const Formula& phi, std::string_view var, const Formula& value);
// body[value / 0]
Formula instantiate(const Formula& body, const Formula& value);
Formula unfold(const Formula& fixpoint);
// checks the binder kind first
Formula unfold(Kind expected, const Formula& fixpoint);
std::vector<std::string> free_variables(const Formula& f);
// strict closed-subterm occurrence
bool is_proper_subformula(const Formula& sub, const Formula& whole);

std::string render(const Formula& f);
// depth-indexed binder names, used as a sort key
std::string canonical_render(const Formula& f);
std::string render(const Sequent& s);

Formula parse_formula(std::string_view text);     // closed only
Formula parse_preformula(std::string_view text);  // free variables allowed
Sequent parse_sequent(const std::vector<std::string>& items);

std::ostream& operator<<(std::ostream& os, const Formula& f);

}  // namespace mumall
