#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gocyclo/sequent.hpp"

namespace gocyclo {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Rule applications shared by both calculi and by fragment dumps. Each
// checker accepts only its own subset: Go_Seq uses Axiom (any principal),
// AxBot, ImpR, ImpL, BoxGo, Cut; Go_∞ uses Axiom (atomic principal only),
// AxBot, ImpR, ImpL, BoxInf, Cut. Open marks a fragment leaf.

struct Axiom {
  Formula principal;
  friend bool operator==(const Axiom&, const Axiom&) = default;
};

struct AxBot {
  friend bool operator==(const AxBot&, const AxBot&) = default;
};

struct ImpR {
  Formula principal;
  friend bool operator==(const ImpR&, const ImpR&) = default;
};

struct ImpL {
  Formula principal;
  friend bool operator==(const ImpL&, const ImpL&) = default;
};

struct Cut {
  Formula cut_formula;
  friend bool operator==(const Cut&, const Cut&) = default;
};

/// Non-well-founded □ rule:
///   ⊠Π ⇒ ⊠(A1..An)   ⊠Π ⇒ A1  …  ⊠Π ⇒ An
///   ─────────────────────────────────────────
///       ctx_l, □Π ⇒ □A1, …, □An, ctx_r
/// `boxed` holds A1..An in canonical order; premise i+1 belongs to boxed[i].
struct BoxInf {
  FormulaMultiset pi;
  std::vector<Formula> boxed;
  FormulaMultiset ctx_l;
  FormulaMultiset ctx_r;
  friend bool operator==(const BoxInf&, const BoxInf&) = default;
};

/// Finite □_Go rule:
///   □Π, Π, □(A → □A) ⇒ A
///   ─────────────────────────
///   ctx_l, □Π ⇒ □A, ctx_r
struct BoxGo {
  FormulaMultiset pi;
  Formula a;
  FormulaMultiset ctx_l;
  FormulaMultiset ctx_r;
  friend bool operator==(const BoxGo&, const BoxGo&) = default;
};

struct Open {
  friend bool operator==(const Open&, const Open&) = default;
};

using Rule = std::variant<Axiom, AxBot, ImpR, ImpL, Cut, BoxInf, BoxGo, Open>;

/// Number of premises the rule takes.
std::size_t arity(const Rule& rule);
bool is_cut(const Rule& rule);
/// True for premise index `i` of a BoxInf with i ≥ 1.
bool is_right_box_premise(const Rule& rule, std::size_t i);

/// Tag and metadata as written in proof files, e.g. `BOX(pi=[p] boxed=[p] ctxL=[] ctxR=[])`.
std::string rule_to_string(const Rule& rule);
/// Parses the text produced by rule_to_string starting at `pos`.
Rule parse_rule(std::string_view text, std::size_t& pos);

/// Builds a BoxInf with the boxed formulas sorted; `premises_by_boxed`
/// is permuted alongside so that premise i+1 still proves ⊠Π ⇒ boxed[i].
template <typename Premise>
BoxInf make_box_inf(FormulaMultiset pi, std::vector<std::pair<Formula, Premise>> boxed_with_premises,
                    FormulaMultiset ctx_l, FormulaMultiset ctx_r, std::vector<Premise>& right_premises_out);

enum class Calculus { Seq, Inf };

struct LocalCheckOptions {
  Calculus calculus = Calculus::Inf;
  bool allow_cut = true;
  bool allow_open = false;  // fragment leaves
};

/// Checks one rule instance. Returns a description of the first mismatch,
/// or an empty optional if the instance matches its schema.
std::optional<std::string> local_violation(const Sequent& conclusion, const Rule& rule,
                                           const std::vector<Sequent>& premises, const LocalCheckOptions& options);

/// Canonical initial rule for a Go_∞ initial sequent (AxBot if ⊥ is on the
/// left, otherwise the least shared atom).
Rule initial_rule(const Sequent& s);

}  // namespace gocyclo

#include <algorithm>

namespace gocyclo {

template <typename Premise>
BoxInf make_box_inf(FormulaMultiset pi, std::vector<std::pair<Formula, Premise>> boxed_with_premises,
                    FormulaMultiset ctx_l, FormulaMultiset ctx_r, std::vector<Premise>& right_premises_out) {
  std::stable_sort(boxed_with_premises.begin(), boxed_with_premises.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  BoxInf rule{std::move(pi), {}, std::move(ctx_l), std::move(ctx_r)};
  right_premises_out.clear();
  for (auto& [f, p] : boxed_with_premises) {
    rule.boxed.push_back(f);
    right_premises_out.push_back(std::move(p));
  }
  return rule;
}

}  // namespace gocyclo
