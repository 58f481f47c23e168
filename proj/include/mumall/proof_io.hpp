#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "mumall/proof.hpp"

namespace mumall {

// pointer is a JSON pointer to the offending field, e.g. "/root"
class SchemaError : public std::runtime_error {
 public:
  SchemaError(const std::string& pointer, const std::string& msg);
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

nlohmann::json rule_to_json(const Rule& r);
Rule rule_from_json(const nlohmann::json& j, const std::string& pointer);

nlohmann::json save_proof(const ProofGraph& g);
ProofGraph load_proof(const nlohmann::json& j);
ProofGraph load_proof_file(const std::string& path);
void save_proof_file(const ProofGraph& g, const std::string& path);

nlohmann::json tree_to_json(const TreeNode& t);

// solid spanning-tree edges, dashed back-edges
std::string export_dot(const ProofGraph& g);
std::string export_dot(const TreeNode& t);

}  // namespace mumall
