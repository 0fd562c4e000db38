#pragma once

#include <stdexcept>

#include "gocyclo/coproof.hpp"

namespace gocyclo {

// Height-non-increasing, fragment-local transformers on Go_∞(+cut) proofs.
// Every output is lazy: its premises force the input only when queried.
// Results are cached by argument identity, so transformers applied to a
// shared unfolding node return a shared node.

/// Raised when an input's endpoint does not have the shape a transformer
/// requires.
class TransformError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// pi_add, Γ ⇒ Δ, sigma_add
CoProof wk(const FormulaMultiset& pi_add, const FormulaMultiset& sigma_add, const CoProof& p);

/// li: Γ, A→B ⇒ Δ  to  Γ, B ⇒ Δ
CoProof invert_impl_left(Formula principal, const CoProof& p);
/// ri: Γ, A→B ⇒ Δ  to  Γ ⇒ A, Δ
CoProof invert_impl_right(Formula principal, const CoProof& p);
/// i: Γ ⇒ A→B, Δ  to  Γ, A ⇒ B, Δ
CoProof invert_impr(Formula principal, const CoProof& p);
/// i_⊥: Γ ⇒ ⊥, Δ  to  Γ ⇒ Δ
CoProof invert_bot(const CoProof& p);

/// acl: Γ, q, q ⇒ Δ  to  Γ, q ⇒ Δ for an atom q
CoProof contract_atom_left(Formula q, const CoProof& p);
/// acr: Γ ⇒ q, q, Δ  to  Γ ⇒ q, Δ
CoProof contract_atom_right(Formula q, const CoProof& p);

/// A BoxInf root loses its contexts (endpoint □Π ⇒ □A1..□An); any other
/// proof is returned as is.
CoProof clip(const CoProof& p);

/// Weakens p to exactly `target`. Throws TransformError unless the
/// conclusion of p is contained in `target` on both sides.
CoProof weaken_to(const CoProof& p, const Sequent& target);

/// Drops every cached transformer result.
void clear_transformer_cache();

}  // namespace gocyclo
