#include "mumall/proof_io.hpp"

#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

namespace mumall {

using nlohmann::json;

SchemaError::SchemaError(const std::string& pointer, const std::string& msg)
    : std::runtime_error(pointer + ": " + msg), pointer_(pointer) {}

namespace {

std::string escape_pointer(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

int int_field(const json& j, const char* key, const std::string& ptr) {
  if (!j.contains(key)) throw SchemaError(ptr + "/" + key, "missing");
  if (!j[key].is_number_integer()) throw SchemaError(ptr + "/" + key, "expected an integer");
  return j[key].get<int>();
}

Formula formula_field(const json& j, const std::string& ptr) {
  if (!j.is_string()) throw SchemaError(ptr, "expected a formula string");
  try {
    return parse_formula(j.get<std::string>());
  } catch (const std::exception& e) {
    throw SchemaError(ptr, e.what());
  }
}

}  // namespace

json rule_to_json(const Rule& r) {
  json j;
  j["name"] = rule_name(r.name);
  switch (r.name) {
    case RuleName::Cut:
      j["cutFormula"] = render(*r.cut_formula);
      j["leftLen"] = r.left_len;
      break;
    case RuleName::Exch:
      j["index"] = r.index;
      break;
    case RuleName::Tensor:
      j["principal"] = r.principal;
      j["leftLen"] = r.left_len;
      break;
    case RuleName::Open:
      break;
    default:
      j["principal"] = r.principal;
  }
  return j;
}

Rule rule_from_json(const json& j, const std::string& ptr) {
  if (!j.is_object()) throw SchemaError(ptr, "expected an object");
  if (!j.contains("name") || !j["name"].is_string()) throw SchemaError(ptr + "/name", "missing rule name");
  std::string name = j["name"].get<std::string>();
  if (name == "plus") {
    int side = int_field(j, "side", ptr);
    if (side != 0 && side != 1) throw SchemaError(ptr + "/side", "side must be 0 or 1");
    name = side == 0 ? "plus0" : "plus1";
  }
  auto rn = rule_from_name(name);
  if (!rn) throw SchemaError(ptr + "/name", "unknown rule '" + name + "'");
  Rule r;
  r.name = *rn;
  switch (r.name) {
    case RuleName::Cut:
      if (!j.contains("cutFormula")) throw SchemaError(ptr + "/cutFormula", "missing");
      r.cut_formula = formula_field(j["cutFormula"], ptr + "/cutFormula");
      r.left_len = int_field(j, "leftLen", ptr);
      break;
    case RuleName::Exch:
      r.index = int_field(j, "index", ptr);
      break;
    case RuleName::Tensor:
      r.principal = int_field(j, "principal", ptr);
      r.left_len = int_field(j, "leftLen", ptr);
      break;
    case RuleName::Open:
      break;
    case RuleName::One:
      r.principal = j.contains("principal") ? int_field(j, "principal", ptr) : 0;
      break;
    default:
      r.principal = int_field(j, "principal", ptr);
  }
  return r;
}

json save_proof(const ProofGraph& g) {
  json nodes = json::object();
  for (auto& n : g.nodes()) {
    json seq = json::array();
    for (auto& f : n.sequent) seq.push_back(render(f));
    json ps = json::array();
    for (auto p : n.premises) ps.push_back(g.node(p).id);
    nodes[n.id] = {{"sequent", seq}, {"rule", rule_to_json(n.rule)}, {"premises", ps}};
  }
  return {{"root", g.node(g.root()).id}, {"nodes", nodes}};
}

ProofGraph load_proof(const json& j) {
  if (!j.is_object()) throw SchemaError("", "expected an object");
  if (!j.contains("root")) throw SchemaError("/root", "missing");
  if (!j["root"].is_string()) throw SchemaError("/root", "expected a node id");
  if (!j.contains("nodes")) throw SchemaError("/nodes", "missing");
  if (!j["nodes"].is_object()) throw SchemaError("/nodes", "expected an object");
  ProofGraph g;
  for (auto& [id, n] : j["nodes"].items()) {
    const std::string ptr = "/nodes/" + escape_pointer(id);
    if (!n.is_object()) throw SchemaError(ptr, "expected an object");
    if (!n.contains("sequent") || !n["sequent"].is_array()) throw SchemaError(ptr + "/sequent", "expected an array");
    Sequent s;
    for (std::size_t i = 0; i < n["sequent"].size(); ++i)
      s.push_back(formula_field(n["sequent"][i], ptr + "/sequent/" + std::to_string(i)));
    if (!n.contains("rule")) throw SchemaError(ptr + "/rule", "missing");
    g.add_node(id, s, rule_from_json(n["rule"], ptr + "/rule"));
  }
  for (auto& [id, n] : j["nodes"].items()) {
    const std::string ptr = "/nodes/" + escape_pointer(id) + "/premises";
    std::vector<std::size_t> ps;
    if (n.contains("premises")) {
      if (!n["premises"].is_array()) throw SchemaError(ptr, "expected an array");
      for (std::size_t i = 0; i < n["premises"].size(); ++i) {
        const json& p = n["premises"][i];
        if (!p.is_string()) throw SchemaError(ptr + "/" + std::to_string(i), "expected a node id");
        auto idx = g.find(p.get<std::string>());
        if (!idx) throw SchemaError(ptr + "/" + std::to_string(i), "unknown node '" + p.get<std::string>() + "'");
        ps.push_back(*idx);
      }
    }
    g.set_premises(*g.find(id), ps);
  }
  auto root = g.find(j["root"].get<std::string>());
  if (!root) throw SchemaError("/root", "unknown node '" + j["root"].get<std::string>() + "'");
  g.set_root(*root);
  return g;
}

ProofGraph load_proof_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("malformed JSON: ") + e.what());
  }
  return load_proof(j);
}

void save_proof_file(const ProofGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << save_proof(g).dump(2) << "\n";
}

json tree_to_json(const TreeNode& t) { return save_proof(tree_to_graph(t)); }

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string export_dot(const ProofGraph& g) {
  std::ostringstream os;
  os << "digraph proof {\n";
  for (auto& n : g.nodes())
    os << "  \"" << dot_escape(n.id) << "\" [label=\"" << dot_escape(n.id + ": " + render(n.sequent)) << "\\n"
       << dot_escape(describe(n.rule)) << "\", shape=box];\n";
  // depth-first spanning tree from the root; every other edge is a back-edge
  std::vector<bool> seen(g.size(), false);
  seen[g.root()] = true;
  std::vector<std::vector<bool>> tree_edge(g.size());
  std::function<void(std::size_t)> dfs = [&](std::size_t u) {
    auto& ps = g.node(u).premises;
    tree_edge[u].assign(ps.size(), false);
    for (std::size_t i = 0; i < ps.size(); ++i)
      if (!seen[ps[i]]) {
        seen[ps[i]] = true;
        tree_edge[u][i] = true;
        dfs(ps[i]);
      }
  };
  dfs(g.root());
  for (std::size_t u = 0; u < g.size(); ++u) {
    auto& ps = g.node(u).premises;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      bool tree = !tree_edge[u].empty() && tree_edge[u][i];
      os << "  \"" << dot_escape(g.node(u).id) << "\" -> \"" << dot_escape(g.node(ps[i]).id) << "\"";
      if (!tree) os << " [style=dashed]";
      os << ";\n";
    }
  }
  os << "}\n";
  return os.str();
}

std::string export_dot(const TreeNode& t) { return export_dot(tree_to_graph(t)); }

}  // namespace mumall
