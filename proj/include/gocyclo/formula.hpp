#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gocyclo {

/// Raised by every text parser in the library. `position` is a 0-based
/// byte offset into the parsed text.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& message, std::size_t position);
  std::size_t position() const noexcept { return position_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string message_;
  std::size_t position_;
};

enum class FormulaKind : std::uint8_t { Bottom = 0, Atom = 1, Implies = 2, Box = 3 };

namespace detail {
struct FormulaNode;
}

/// Modal formula over ⊥, atoms, → and □.
///
/// Formulas are hash-consed: two structurally equal formulas share one node,
/// so equality and hashing are pointer operations. Nodes live for the whole
/// process and are immutable, which makes `Formula` a trivially copyable
/// value that is safe to share across threads.
class Formula {
 public:
  Formula();  // ⊥

  static Formula bottom();
  static Formula atom(std::string_view name);
  static Formula implies(Formula left, Formula right);
  static Formula box(Formula body);

  FormulaKind kind() const noexcept;
  bool is_bottom() const noexcept { return kind() == FormulaKind::Bottom; }
  bool is_atom() const noexcept { return kind() == FormulaKind::Atom; }
  bool is_implies() const noexcept { return kind() == FormulaKind::Implies; }
  bool is_box() const noexcept { return kind() == FormulaKind::Box; }

  const std::string& name() const;  // atoms only
  Formula left() const;             // implications only
  Formula right() const;            // implications only
  Formula body() const;             // boxes only

  /// Number of nested □ on the deepest path.
  std::size_t box_depth() const noexcept;
  std::size_t size() const noexcept;
  std::size_t hash() const noexcept;

  std::string to_string() const;

  friend bool operator==(Formula a, Formula b) noexcept { return a.node_ == b.node_; }
  /// Canonical total order: ⊥ < atoms < → < □, then lexicographic on
  /// names / children.
  friend std::strong_ordering operator<=>(Formula a, Formula b) noexcept;

 private:
  explicit Formula(const detail::FormulaNode* node) : node_(node) {}
  const detail::FormulaNode* node_;
};

using FormulaSet = std::set<Formula>;

Formula parse_formula(std::string_view text);

/// Parses a formula starting at `pos`, stopping at the first character that
/// cannot extend it. Used by the sequent and proof-file parsers.
Formula parse_formula_prefix(std::string_view text, std::size_t& pos);

/// {A → □A | A ∈ set}
FormulaSet star_set(const FormulaSet& set);

FormulaSet set_union(const FormulaSet& a, const FormulaSet& b);
FormulaSet set_difference(const FormulaSet& a, const FormulaSet& b);
bool is_subset(const FormulaSet& a, const FormulaSet& b);

/// Adds `f` and all its subformulas to `out`.
void collect_subformulas(Formula f, FormulaSet& out);

}  // namespace gocyclo

template <>
struct std::hash<gocyclo::Formula> {
  std::size_t operator()(gocyclo::Formula f) const noexcept { return f.hash(); }
};
