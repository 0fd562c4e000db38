#pragma once

#include <map>
#include <string>
#include <tuple>

#include "gocyclo/coproof.hpp"
#include "gocyclo/goseq.hpp"

namespace gocyclo {

/// Incrementally assembles a ProofGraph with generated node ids.
class GraphBuilder {
 public:
  explicit GraphBuilder(std::string name = "proof");

  /// Adds a node; an empty `id` gets a fresh `n<k>` id.
  std::string add(Sequent s, Rule r, std::vector<std::string> premises = {}, std::string id = {});
  void set_premises(const std::string& id, std::vector<std::string> premises);
  const GraphNode& at(const std::string& id) const { return graph_.at(id); }
  /// Finalises with the given root.
  ProofGraph finish(const std::string& root);

  /// Cached Γ, A ⇒ A, Δ expansions inside this graph.
  std::map<std::tuple<FormulaMultiset, Formula, FormulaMultiset>, std::string> ax_cache;
  /// Cached go_schema roots inside this graph, by formula.
  std::map<Formula, std::string> schema_cache;
  /// Cached weakenings, by (node, added antecedent, added succedent).
  std::map<std::tuple<std::string, FormulaMultiset, FormulaMultiset>, std::string> wk_cache;

 private:
  ProofGraph graph_;
  std::size_t counter_ = 0;
};

/// Cut-free proof of Γ, A ⇒ A, Δ with atomic initial sequents, by recursion
/// on A (□B uses a BOX rule with Π = {B}).
CoProof ax_expand(const FormulaMultiset& gamma, Formula a, const FormulaMultiset& delta);
std::string ax_expand_into(GraphBuilder& b, const FormulaMultiset& gamma, Formula a, const FormulaMultiset& delta);

/// Cyclic cut-free proof of □(□(A→□A)→A) ⇒ □A with two back-edge targets.
ProofGraph go_schema(Formula a);
std::string go_schema_into(GraphBuilder& b, Formula a);

/// Weakening of the node `id` inside a builder; BOX nodes absorb the
/// additions into their contexts and keep their premises.
std::string wk_into(GraphBuilder& b, const std::string& id, const FormulaMultiset& ante_add,
                    const FormulaMultiset& succ_add);

/// Go_Seq(+cut) proof to a cyclic Go_∞(+cut) graph with the same root
/// sequent. Throws std::invalid_argument if the input does not check.
ProofGraph embed_graph(const FiniteProof& p, const std::string& name = "embedded");
CoProof embed(const FiniteProof& p);

}  // namespace gocyclo
