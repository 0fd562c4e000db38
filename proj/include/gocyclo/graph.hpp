#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "gocyclo/rule.hpp"

namespace gocyclo {

struct GraphNode {
  Sequent sequent;
  Rule rule;
  std::vector<std::string> premises;
};

/// A finite proof graph as stored in `.proof` files. Premise lists may point
/// back to earlier nodes, so the same type carries finite trees, cyclic
/// proofs, and fragment dumps.
class ProofGraph {
 public:
  std::string name = "proof";
  std::string root;

  /// Throws std::invalid_argument on a duplicate id.
  void add(const std::string& id, GraphNode node);
  const GraphNode& at(const std::string& id) const;
  GraphNode& at(const std::string& id);
  bool contains(const std::string& id) const { return nodes_.count(id) > 0; }
  /// Ids in insertion order.
  const std::vector<std::string>& ids() const noexcept { return order_; }
  std::size_t size() const noexcept { return order_.size(); }

  /// Throws std::invalid_argument naming the first dangling premise or a
  /// missing root.
  void validate_references() const;
  /// Ids reachable from the root, in depth-first preorder.
  std::vector<std::string> reachable() const;
  bool has_tag(bool (*pred)(const Rule&)) const;

 private:
  std::map<std::string, GraphNode> nodes_;
  std::vector<std::string> order_;
};

using CyclicProof = ProofGraph;

/// Parses the line-oriented proof format. Blank lines and lines starting
/// with `#` are skipped. Errors are SyntaxError with the byte offset of the
/// offending line.
ProofGraph parse_proof_graph(std::string_view text);
std::string write_proof_graph(const ProofGraph& graph);

}  // namespace gocyclo
