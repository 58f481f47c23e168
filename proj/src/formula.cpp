#include "mumall/formula.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

namespace mumall {

struct Formula::Node {
  Kind kind;
  Formula a{nullptr};
  Formula b{nullptr};
  std::string name;
  std::uint32_t index = 0;
  std::size_t size = 1;
  std::size_t hash = 0;
  std::uint32_t loose = 0;
  bool has_free = false;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

Formula::Formula() {
  static const Formula unit = one();
  node_ = unit.node_;
}

Formula::Formula(std::nullptr_t) {}

Formula::Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

namespace {

std::shared_ptr<Formula::Node> blank(Kind k) {
  auto n = std::make_shared<Formula::Node>();
  n->kind = k;
  n->hash = mix(0x51ed27, static_cast<std::size_t>(k));
  return n;
}

}  // namespace

Formula Formula::free_var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Free;
  n->hash = mix(mix(0x51ed27, 0), std::hash<std::string>{}(name));
  n->name = std::move(name);
  n->has_free = true;
  return Formula(std::move(n));
}

Formula Formula::bound_var(std::uint32_t index) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Bound;
  n->index = index;
  n->hash = mix(mix(0x51ed27, 1), index);
  n->loose = index + 1;
  return Formula(std::move(n));
}

Formula Formula::one() { return Formula(blank(Kind::One)); }
Formula Formula::bot() { return Formula(blank(Kind::Bot)); }
Formula Formula::zero() { return Formula(blank(Kind::Zero)); }
Formula Formula::top() { return Formula(blank(Kind::Top)); }

Formula Formula::binary(Kind k, const Formula& a, const Formula& b) {
  if (k != Kind::Tensor && k != Kind::Par && k != Kind::Plus && k != Kind::With)
    throw ShapeError("not a binary connective");
  auto n = blank(k);
  n->a = a;
  n->b = b;
  n->size = 1 + a.size() + b.size();
  n->hash = mix(mix(n->hash, a.hash()), b.hash());
  n->loose = std::max(a.loose(), b.loose());
  n->has_free = a.has_free() || b.has_free();
  return Formula(std::move(n));
}

Formula Formula::tensor(const Formula& a, const Formula& b) { return binary(Kind::Tensor, a, b); }
Formula Formula::par(const Formula& a, const Formula& b) { return binary(Kind::Par, a, b); }
Formula Formula::plus(const Formula& a, const Formula& b) { return binary(Kind::Plus, a, b); }
Formula Formula::with(const Formula& a, const Formula& b) { return binary(Kind::With, a, b); }

Formula Formula::raw_fixpoint(Kind k, std::string hint, const Formula& body) {
  if (k != Kind::Mu && k != Kind::Nu) throw ShapeError("not a fixed-point binder");
  auto n = blank(k);
  n->a = body;
  n->name = std::move(hint);
  n->size = 1 + body.size();
  n->hash = mix(n->hash, body.hash());
  n->loose = body.loose() > 0 ? body.loose() - 1 : 0;
  n->has_free = body.has_free();
  return Formula(std::move(n));
}

namespace {

Formula abstract(const Formula& f, const std::string& var, std::uint32_t depth) {
  if (!f.has_free()) return f;
  switch (f.kind()) {
    case Kind::Free:
      return f.name() == var ? Formula::bound_var(depth) : f;
    case Kind::Tensor:
    case Kind::Par:
    case Kind::Plus:
    case Kind::With:
      return Formula::binary(f.kind(), abstract(f.left(), var, depth), abstract(f.right(), var, depth));
    case Kind::Mu:
    case Kind::Nu:
      return Formula::raw_fixpoint(f.kind(), f.name(), abstract(f.body(), var, depth + 1));
    default:
      return f;
  }
}

}  // namespace

Formula Formula::fixpoint(Kind k, const std::string& var, const Formula& body) {
  return raw_fixpoint(k, var, abstract(body, var, 0));
}
Formula Formula::mu(const std::string& var, const Formula& body) { return fixpoint(Kind::Mu, var, body); }
Formula Formula::nu(const std::string& var, const Formula& body) { return fixpoint(Kind::Nu, var, body); }

Kind Formula::kind() const { return node_->kind; }
bool Formula::is_binary() const {
  auto k = kind();
  return k == Kind::Tensor || k == Kind::Par || k == Kind::Plus || k == Kind::With;
}
bool Formula::is_unit() const {
  auto k = kind();
  return k == Kind::One || k == Kind::Bot || k == Kind::Zero || k == Kind::Top;
}
const Formula& Formula::left() const {
  if (!is_binary()) throw ShapeError("left() on a non-binary formula");
  return node_->a;
}
const Formula& Formula::right() const {
  if (!is_binary()) throw ShapeError("right() on a non-binary formula");
  return node_->b;
}
const Formula& Formula::body() const {
  if (!is_fixpoint()) throw ShapeError("body() on a non-fixpoint formula");
  return node_->a;
}
const std::string& Formula::name() const { return node_->name; }
std::uint32_t Formula::index() const { return node_->index; }
std::size_t Formula::size() const { return node_->size; }
std::size_t Formula::hash() const { return node_->hash; }
bool Formula::closed() const { return node_->loose == 0 && !node_->has_free; }
bool Formula::has_free() const { return node_->has_free; }
std::uint32_t Formula::loose() const { return node_->loose; }

bool operator==(const Formula& x, const Formula& y) {
  if (x.node_ == y.node_) return true;
  if (x.hash() != y.hash() || x.size() != y.size() || x.kind() != y.kind()) return false;
  switch (x.kind()) {
    case Kind::Free:
      return x.name() == y.name();
    case Kind::Bound:
      return x.index() == y.index();
    case Kind::Tensor:
    case Kind::Par:
    case Kind::Plus:
    case Kind::With:
      return x.left() == y.left() && x.right() == y.right();
    case Kind::Mu:
    case Kind::Nu:
      return x.body() == y.body();
    default:
      return true;
  }
}

ParseError::ParseError(const std::string& msg, std::size_t offset)
    : std::runtime_error(msg + " at offset " + std::to_string(offset)), offset_(offset) {}

FreeVariableError::FreeVariableError(const std::string& var)
    : std::runtime_error("free variable " + var), var_(var) {}

Kind dual(Kind k) {
  switch (k) {
    case Kind::One: return Kind::Bot;
    case Kind::Bot: return Kind::One;
    case Kind::Zero: return Kind::Top;
    case Kind::Top: return Kind::Zero;
    case Kind::Tensor: return Kind::Par;
    case Kind::Par: return Kind::Tensor;
    case Kind::Plus: return Kind::With;
    case Kind::With: return Kind::Plus;
    case Kind::Mu: return Kind::Nu;
    case Kind::Nu: return Kind::Mu;
    default: return k;
  }
}

bool is_negative(Kind k) {
  return k == Kind::Bot || k == Kind::Par || k == Kind::With || k == Kind::Nu || k == Kind::Top;
}

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Free: return "var";
    case Kind::Bound: return "bound";
    case Kind::One: return "one";
    case Kind::Bot: return "bot";
    case Kind::Zero: return "zero";
    case Kind::Top: return "top";
    case Kind::Tensor: return "tensor";
    case Kind::Par: return "par";
    case Kind::Plus: return "plus";
    case Kind::With: return "with";
    case Kind::Mu: return "mu";
    case Kind::Nu: return "nu";
  }
  return "?";
}

Formula negate(const Formula& f) {
  switch (f.kind()) {
    case Kind::Free:
    case Kind::Bound:
      return f;
    case Kind::One: return Formula::bot();
    case Kind::Bot: return Formula::one();
    case Kind::Zero: return Formula::top();
    case Kind::Top: return Formula::zero();
    case Kind::Tensor:
    case Kind::Par:
    case Kind::Plus:
    case Kind::With:
      return Formula::binary(dual(f.kind()), negate(f.left()), negate(f.right()));
    case Kind::Mu:
    case Kind::Nu:
      return Formula::raw_fixpoint(dual(f.kind()), f.name(), negate(f.body()));
  }
  return f;
}

Formula substitute(const Formula& phi, std::string_view var, const Formula& value) {
  if (!value.closed()) throw ShapeError("substituted value must be closed");
  std::function<Formula(const Formula&)> go = [&](const Formula& f) -> Formula {
    if (!f.has_free()) return f;
    switch (f.kind()) {
      case Kind::Free:
        return f.name() == var ? value : f;
      case Kind::Tensor:
      case Kind::Par:
      case Kind::Plus:
      case Kind::With:
        return Formula::binary(f.kind(), go(f.left()), go(f.right()));
      case Kind::Mu:
      case Kind::Nu:
        return Formula::raw_fixpoint(f.kind(), f.name(), go(f.body()));
      default:
        return f;
    }
  };
  return go(phi);
}

namespace {

Formula instantiate_at(const Formula& f, const Formula& value, std::uint32_t depth) {
  if (f.loose() <= depth) return f;
  switch (f.kind()) {
    case Kind::Bound:
      if (f.index() == depth) return value;
      return Formula::bound_var(f.index() - 1);
    case Kind::Tensor:
    case Kind::Par:
    case Kind::Plus:
    case Kind::With:
      return Formula::binary(f.kind(), instantiate_at(f.left(), value, depth),
                             instantiate_at(f.right(), value, depth));
    case Kind::Mu:
    case Kind::Nu:
      return Formula::raw_fixpoint(f.kind(), f.name(), instantiate_at(f.body(), value, depth + 1));
    default:
      return f;
  }
}

}  // namespace

Formula instantiate(const Formula& body, const Formula& value) {
  if (value.loose() != 0) throw ShapeError("instantiate with an open value");
  return instantiate_at(body, value, 0);
}

Formula unfold(const Formula& fixpoint) {
  if (!fixpoint.is_fixpoint()) throw ShapeError(std::string("cannot unfold a ") + kind_name(fixpoint.kind()));
  return instantiate(fixpoint.body(), fixpoint);
}

Formula unfold(Kind expected, const Formula& fixpoint) {
  if (fixpoint.kind() != expected)
    throw ShapeError(std::string("expected ") + kind_name(expected) + ", got " + kind_name(fixpoint.kind()));
  return unfold(fixpoint);
}

std::vector<std::string> free_variables(const Formula& f) {
  std::set<std::string> acc;
  std::function<void(const Formula&)> go = [&](const Formula& g) {
    if (!g.has_free()) return;
    if (g.kind() == Kind::Free) {
      acc.insert(g.name());
    } else if (g.is_binary()) {
      go(g.left());
      go(g.right());
    } else if (g.is_fixpoint()) {
      go(g.body());
    }
  };
  go(f);
  return {acc.begin(), acc.end()};
}

bool is_proper_subformula(const Formula& sub, const Formula& whole) {
  if (sub.size() >= whole.size()) return false;
  std::function<bool(const Formula&)> go = [&](const Formula& g) {
    if (g.size() < sub.size()) return false;
    if (g == sub) return true;
    if (g.is_binary()) return go(g.left()) || go(g.right());
    if (g.is_fixpoint()) return go(g.body());
    return false;
  };
  if (whole.is_binary()) return go(whole.left()) || go(whole.right());
  if (whole.is_fixpoint()) return go(whole.body());
  return false;
}

namespace {

const char* op_text(Kind k) {
  switch (k) {
    case Kind::Tensor: return " * ";
    case Kind::Par: return " @ ";
    case Kind::Plus: return " + ";
    case Kind::With: return " & ";
    default: return " ? ";
  }
}

bool reserved(const std::string& s) { return s == "mu" || s == "nu" || s == "bot" || s == "top"; }

class Renderer {
 public:
  explicit Renderer(bool canonical) : canonical_(canonical) {}

  void reserve(const Formula& f) {
    for (auto& v : free_variables(f)) used_.insert(v);
  }

  std::string top(const Formula& f) {
    std::string out;
    formula(f, out);
    return out;
  }

 private:
  void formula(const Formula& f, std::string& out) {
    if (f.is_fixpoint()) {
      std::string name = fresh(f.name());
      out += f.kind() == Kind::Mu ? "mu " : "nu ";
      out += name;
      out += ". ";
      env_.push_back(name);
      formula(f.body(), out);
      env_.pop_back();
      return;
    }
    chain(f, out);
  }

  void chain(const Formula& f, std::string& out) {
    if (!f.is_binary()) {
      atom(f, out);
      return;
    }
    const Formula& l = f.left();
    if (l.kind() == f.kind())
      chain(l, out);
    else
      atom(l, out);
    out += op_text(f.kind());
    atom(f.right(), out);
  }

  void atom(const Formula& f, std::string& out) {
    switch (f.kind()) {
      case Kind::One: out += "1"; return;
      case Kind::Bot: out += "bot"; return;
      case Kind::Zero: out += "0"; return;
      case Kind::Top: out += "top"; return;
      case Kind::Free: out += f.name(); return;
      case Kind::Bound:
        if (f.index() < env_.size())
          out += env_[env_.size() - 1 - f.index()];
        else
          out += "#" + std::to_string(f.index());
        return;
      default:
        out += "(";
        formula(f, out);
        out += ")";
    }
  }

  std::string fresh(const std::string& hint) {
    if (canonical_) return "v" + std::to_string(env_.size());
    std::string base = hint.empty() ? "X" : hint;
    std::string name = base;
    for (int i = 1; used_.count(name) || reserved(name); ++i) name = base + std::to_string(i);
    used_.insert(name);
    return name;
  }

  bool canonical_;
  std::vector<std::string> env_;
  std::set<std::string> used_;
};

}  // namespace

std::string render(const Formula& f) {
  Renderer r(false);
  r.reserve(f);
  return r.top(f);
}

std::string canonical_render(const Formula& f) {
  Renderer r(true);
  return r.top(f);
}

std::string render(const Sequent& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ", ";
    out += render(s[i]);
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << render(f); }

namespace {

enum class Tok { Ident, One, Zero, Bot, Top, Mu, Nu, Dot, LParen, RParen, Op, End };

struct Token {
  Tok tok;
  std::string text;
  std::size_t offset;
};

class Parser {
 public:
  explicit Parser(std::string_view s) : src_(s) { advance(); }

  Formula parse() {
    Formula f = formula();
    if (cur_.tok != Tok::End) throw ParseError("unexpected '" + cur_.text + "'", cur_.offset);
    return f;
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ >= src_.size()) {
      cur_ = {Tok::End, "end of input", pos_};
      return;
    }
    std::size_t start = pos_;
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' || src_[pos_] == '\''))
        ++pos_;
      std::string w(src_.substr(start, pos_ - start));
      Tok t = Tok::Ident;
      if (w == "mu") t = Tok::Mu;
      else if (w == "nu") t = Tok::Nu;
      else if (w == "bot") t = Tok::Bot;
      else if (w == "top") t = Tok::Top;
      cur_ = {t, w, start};
      return;
    }
    ++pos_;
    switch (c) {
      case '1': cur_ = {Tok::One, "1", start}; return;
      case '0': cur_ = {Tok::Zero, "0", start}; return;
      case '.': cur_ = {Tok::Dot, ".", start}; return;
      case '(': cur_ = {Tok::LParen, "(", start}; return;
      case ')': cur_ = {Tok::RParen, ")", start}; return;
      case '*':
      case '@':
      case '+':
      case '&':
        cur_ = {Tok::Op, std::string(1, c), start};
        return;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
  }

  Formula formula() {
    if (cur_.tok == Tok::Mu || cur_.tok == Tok::Nu) {
      Kind k = cur_.tok == Tok::Mu ? Kind::Mu : Kind::Nu;
      advance();
      if (cur_.tok != Tok::Ident) throw ParseError("expected a variable name", cur_.offset);
      std::string var = cur_.text;
      advance();
      if (cur_.tok != Tok::Dot) throw ParseError("expected '.'", cur_.offset);
      advance();
      Formula body = formula();
      return Formula::fixpoint(k, var, body);
    }
    Formula acc = atom();
    if (cur_.tok != Tok::Op) return acc;
    std::string op = cur_.text;
    while (cur_.tok == Tok::Op) {
      if (cur_.text != op)
        throw ParseError("mixed operators '" + op + "' and '" + cur_.text + "' need parentheses", cur_.offset);
      advance();
      Formula rhs = atom();
      Kind k = op == "*" ? Kind::Tensor : op == "@" ? Kind::Par : op == "+" ? Kind::Plus : Kind::With;
      acc = Formula::binary(k, acc, rhs);
    }
    return acc;
  }

  Formula atom() {
    Token t = cur_;
    switch (t.tok) {
      case Tok::One: advance(); return Formula::one();
      case Tok::Zero: advance(); return Formula::zero();
      case Tok::Bot: advance(); return Formula::bot();
      case Tok::Top: advance(); return Formula::top();
      case Tok::Ident: advance(); return Formula::free_var(t.text);
      case Tok::LParen: {
        advance();
        Formula f = formula();
        if (cur_.tok != Tok::RParen) throw ParseError("expected ')'", cur_.offset);
        advance();
        return f;
      }
      case Tok::Mu:
      case Tok::Nu:
        throw ParseError("binder inside an operator chain needs parentheses", t.offset);
      default:
        throw ParseError("expected a formula, got '" + t.text + "'", t.offset);
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token cur_{Tok::End, "", 0};
};

}  // namespace

Formula parse_preformula(std::string_view text) { return Parser(text).parse(); }

Formula parse_formula(std::string_view text) {
  Formula f = parse_preformula(text);
  auto fv = free_variables(f);
  if (!fv.empty()) throw FreeVariableError(fv.front());
  return f;
}

Sequent parse_sequent(const std::vector<std::string>& items) {
  Sequent s;
  s.reserve(items.size());
  for (auto& it : items) s.push_back(parse_formula(it));
  return s;
}

}  // namespace mumall
