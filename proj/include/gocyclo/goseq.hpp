#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gocyclo/graph.hpp"

namespace gocyclo {

/// Immutable finite derivation. Copies share structure.
class FiniteProof {
 public:
  FiniteProof(Sequent conclusion, Rule rule, std::vector<FiniteProof> premises = {});

  const Sequent& conclusion() const noexcept { return node_->conclusion; }
  const Rule& rule() const noexcept { return node_->rule; }
  const std::vector<FiniteProof>& premises() const noexcept { return node_->premises; }
  const FiniteProof& premise(std::size_t i) const { return node_->premises.at(i); }

  std::size_t node_count() const;
  /// Edges on the longest root-to-leaf path.
  std::size_t height() const;
  bool has_cut() const;
  const void* identity() const noexcept { return node_.get(); }

 private:
  struct Node {
    Sequent conclusion;
    Rule rule;
    std::vector<FiniteProof> premises;
  };
  std::shared_ptr<const Node> node_;
};

struct CheckReport {
  bool accepted = true;
  std::string path;  // premise indices from the root, e.g. "root.0.1"
  std::string message;

  explicit operator bool() const noexcept { return accepted; }
  std::string to_string() const;
};

/// Checks every node against the finite calculus (□_Go, arbitrary-principal
/// initial sequents). Cut nodes are rejected unless `allow_cut`.
CheckReport check_goseq(const FiniteProof& p, bool allow_cut);

/// Builders that compute the conclusion from the premises.
FiniteProof seq_axiom(const FormulaMultiset& gamma, Formula a, const FormulaMultiset& delta);
FiniteProof seq_bot(const FormulaMultiset& gamma, const FormulaMultiset& delta);
FiniteProof seq_imp_r(Formula principal, FiniteProof premise);
FiniteProof seq_imp_l(Formula principal, FiniteProof left, FiniteProof right);
FiniteProof seq_cut(Formula a, FiniteProof left, FiniteProof right);
FiniteProof seq_box_go(FormulaMultiset pi, Formula a, FormulaMultiset ctx_l, FormulaMultiset ctx_r,
                       FiniteProof premise);

/// Weakening by context threading: proves pi_add, Γ ⇒ Δ, sigma_add.
FiniteProof wk_seq(const FormulaMultiset& pi_add, const FormulaMultiset& sigma_add, const FiniteProof& p);

/// Left contraction: from a proof of Γ, Π, Π ⇒ Δ builds one of Γ, Π ⇒ Δ.
/// Throws std::invalid_argument if the conclusion lacks two copies of Π.
FiniteProof ctr_seq(const FormulaMultiset& pi, const FiniteProof& p);
/// Right-hand counterpart: Γ ⇒ Δ, Σ, Σ to Γ ⇒ Δ, Σ.
FiniteProof ctr_seq_right(const FormulaMultiset& sigma, const FiniteProof& p);

/// Replaces every initial sequent with a non-atomic principal by its
/// expansion into atomic initial sequents.
FiniteProof expand_axioms_seq(const FiniteProof& p);

/// Proofs with cut of ⇒ □(p→q)→(□p→□q), ⇒ □p→□□p and
/// ⇒ □(□(p→□p)→p)→□p, in that order.
std::vector<FiniteProof> axiom_fixtures();

/// Nodes are numbered n0, n1, … in preorder; shared subproofs are emitted once.
ProofGraph to_graph(const FiniteProof& p, const std::string& name = "proof");
/// Throws std::invalid_argument if the reachable part of the graph is cyclic.
FiniteProof finite_from_graph(const ProofGraph& g);

}  // namespace gocyclo
