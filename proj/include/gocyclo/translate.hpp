#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "gocyclo/cutelim.hpp"
#include "gocyclo/goseq.hpp"

namespace gocyclo {

/// Termination measure of one translation step, compared lexicographically:
/// |Sub(Γ⇒Δ) \ Λ₁|, |Sub(Γ⇒Δ) \ Λ₂|, |Sub(Γ⇒Δ) \ Ω| and the local height.
struct Measure {
  std::size_t m1 = 0, m2 = 0, m3 = 0, m4 = 0;
  friend auto operator<=>(const Measure&, const Measure&) = default;
  std::string to_string() const;
};

struct MeasureRecord {
  std::size_t id = 0;
  std::optional<std::size_t> parent;
  std::string step;  // "axiom", "impr", "impl", "3.1" .. "3.4"
  std::string sequent;
  Measure measure;
  bool memo_hit = false;
};

struct MeasureReport {
  bool ok = true;
  std::size_t calls = 0;
  std::vector<MeasureRecord> violation;  // root-to-offender chain
  std::string to_string() const;
};

MeasureReport measure_audit(const std::vector<MeasureRecord>& trace);

/// □(Λ₁*), Λ₂*, ⊠Ω
FormulaMultiset translation_context(const FormulaSet& lambda1, const FormulaSet& lambda2, const FormulaSet& omega);

/// Cut-free Go_∞ proofs to finite Go_Seq proofs. Forces only the part of the
/// input that the measure admits, so it terminates on infinite inputs.
class Translator {
 public:
  Translator() = default;

  /// Go_Seq proof of □(Λ₁*), Λ₂*, ⊠Ω, Γ ⇒ Δ where p ⊢ Γ ⇒ Δ. Throws
  /// std::invalid_argument if p contains a cut or Λ₂ ⊄ Λ₁.
  FiniteProof to_goseq(const CoProof& p, const FormulaSet& lambda1 = {}, const FormulaSet& lambda2 = {},
                       const FormulaSet& omega = {});

  const std::vector<MeasureRecord>& trace() const noexcept { return trace_; }
  MeasureReport audit() const { return measure_audit(trace_); }

 private:
  FiniteProof step(const CoProof& p, const FormulaSet& l1, const FormulaSet& l2, const FormulaSet& om,
                   std::optional<std::size_t> parent);

  using Key = std::tuple<const CoNode*, FormulaSet, FormulaSet, FormulaSet>;
  std::map<Key, std::pair<CoProof, FiniteProof>> memo_;
  std::vector<MeasureRecord> trace_;
};

FiniteProof to_goseq(const CoProof& p, const FormulaSet& lambda1 = {}, const FormulaSet& lambda2 = {},
                     const FormulaSet& omega = {});

/// Cut-free Go_Seq proof of the endpoint of p, obtained by embedding into
/// Go_∞ + cut, eliminating cuts and translating back. Throws
/// std::invalid_argument if p does not check.
FiniteProof eliminate_cut_seq(const FiniteProof& p);
/// Same, with a caller-supplied engine and translator (for tracing).
FiniteProof eliminate_cut_seq(const FiniteProof& p, Engine& engine, Translator& translator);

}  // namespace gocyclo
