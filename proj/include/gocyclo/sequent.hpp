#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "gocyclo/formula.hpp"

namespace gocyclo {

/// Finite multiset of formulas. Iteration is in canonical formula order;
/// zero multiplicities are never stored.
class FormulaMultiset {
 public:
  using Counts = std::map<Formula, std::size_t>;

  FormulaMultiset() = default;
  FormulaMultiset(std::initializer_list<Formula> formulas);
  explicit FormulaMultiset(const std::vector<Formula>& formulas);
  explicit FormulaMultiset(const FormulaSet& formulas);

  void add(Formula f, std::size_t times = 1);
  /// Removes up to `times` copies; returns how many were removed.
  std::size_t remove(Formula f, std::size_t times = 1);

  std::size_t count(Formula f) const;
  bool contains(Formula f) const { return count(f) > 0; }
  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  /// Every element repeated by multiplicity, canonical order.
  std::vector<Formula> elements() const;
  FormulaSet support() const;
  const Counts& counts() const noexcept { return counts_; }

  FormulaMultiset with(Formula f) const;
  FormulaMultiset without(Formula f) const;

  friend bool operator==(const FormulaMultiset&, const FormulaMultiset&) = default;
  friend auto operator<=>(const FormulaMultiset& a, const FormulaMultiset& b) { return a.counts_ <=> b.counts_; }

 private:
  Counts counts_;
  std::size_t size_ = 0;
};

/// Multiset sum: multiplicities add.
FormulaMultiset sum(const FormulaMultiset& a, const FormulaMultiset& b);
/// Per-formula maximum of multiplicities.
FormulaMultiset set_union(const FormulaMultiset& a, const FormulaMultiset& b);
/// Saturating difference.
FormulaMultiset difference(const FormulaMultiset& a, const FormulaMultiset& b);
/// Per-formula minimum of multiplicities.
FormulaMultiset intersection(const FormulaMultiset& a, const FormulaMultiset& b);
bool is_submultiset(const FormulaMultiset& a, const FormulaMultiset& b);

/// □A1, …, □An
FormulaMultiset box_all(const FormulaMultiset& g);
/// A1, …, An, □A1, …, □An
FormulaMultiset boxtimes(const FormulaMultiset& g);

std::string to_string(const FormulaMultiset& m);

/// Γ ⇒ Δ. Equality is multiset equality on both sides.
struct Sequent {
  FormulaMultiset ante;
  FormulaMultiset succ;

  std::string to_string() const;
  friend bool operator==(const Sequent&, const Sequent&) = default;
  friend auto operator<=>(const Sequent&, const Sequent&) = default;
};

/// Parses `A1, A2 |- B1, B2`; either side may be empty.
Sequent parse_sequent(std::string_view text);

/// Parses a comma separated (possibly empty) formula list, stopping before
/// any character that cannot continue the list.
std::vector<Formula> parse_formula_list(std::string_view text, std::size_t& pos);

/// Sub(Γ ⇒ Δ)
FormulaSet subformulas(const Sequent& s);

/// Go_∞ initial sequent: some atom on both sides, or ⊥ on the left.
bool is_initial_inf(const Sequent& s);

}  // namespace gocyclo
