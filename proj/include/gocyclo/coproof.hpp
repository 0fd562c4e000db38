#pragma once

#include <atomic>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "gocyclo/graph.hpp"

namespace gocyclo {

class CoNode;
/// Handle to a possibly infinite proof tree. Conclusion and rule are known
/// on construction; premises are produced on demand.
using CoProof = std::shared_ptr<const CoNode>;

class CoNode {
 public:
  CoNode(Sequent conclusion, Rule rule);
  virtual ~CoNode() = default;
  CoNode(const CoNode&) = delete;
  CoNode& operator=(const CoNode&) = delete;

  const Sequent& conclusion() const noexcept { return conclusion_; }
  const Rule& rule() const noexcept { return rule_; }
  std::size_t arity() const noexcept { return arity_; }

  /// Forces premise `i`. Repeated calls return the same handle.
  virtual CoProof premise(std::size_t i) const = 0;
  std::vector<CoProof> premises() const;

  /// Premise conclusion, computed from the rule without forcing the premise
  /// where the rule determines it.
  Sequent premise_conclusion(std::size_t i) const;

  /// Edges on the longest branch of the main fragment; cached.
  std::size_t local_height() const;

 private:
  Sequent conclusion_;
  Rule rule_;
  std::size_t arity_;
  mutable std::atomic<long> height_{-1};
};

/// Node with premises supplied up front.
CoProof make_node(Sequent conclusion, Rule rule, std::vector<CoProof> premises = {});

/// Node whose premise i is `thunk(i)`, evaluated at most once.
CoProof make_lazy(Sequent conclusion, Rule rule, std::function<CoProof(std::size_t)> thunk);

/// The canonical initial rule applied to an initial sequent (AXB if bot is on
/// the left, otherwise the least atom on both sides).
CoProof make_initial(const Sequent& s);

struct ValidityReport {
  bool accepted = true;
  /// "<id>: <message>" per failing node, in graph order.
  std::vector<std::string> schema_errors;
  /// Node ids of a cycle that avoids right premises of BOX, first id
  /// repeated at the end; empty if none.
  std::vector<std::string> cycle;

  explicit operator bool() const noexcept { return accepted; }
  std::string to_string() const;
};

/// Checks the nodes reachable from the root against the Go_∞(+cut) rules
/// and verifies that deleting right-premise edges of BOX nodes leaves an
/// acyclic graph.
ValidityReport check_cyclic(const ProofGraph& g);

/// Tree unfolding; graph node `id` maps to one shared CoNode. Throws
/// std::invalid_argument with the validity report if `g` is rejected.
CoProof unfold(const ProofGraph& g);
/// Unfolding without the validity check (for already-checked graphs).
CoProof unfold_unchecked(const ProofGraph& g);

struct FragmentNode;
using Fragment = std::shared_ptr<const FragmentNode>;

/// Finite prefix of a CoProof. Children of an Open node are empty; an Open
/// node carries the sequent of the cut premise.
struct FragmentNode {
  Sequent sequent;
  Rule rule;
  std::vector<Fragment> children;
};

/// Cuts every branch at its n-th right premise of BOX. n = 0 gives a single
/// Open node labelled with the root sequent.
Fragment fragment(const CoProof& p, std::size_t n);
bool fragments_equal(const Fragment& a, const Fragment& b);
/// Equality of n-fragments, computed without materialising them.
bool equal_upto(const CoProof& a, const CoProof& b, std::size_t n);

std::size_t fragment_node_count(const Fragment& f);
bool fragment_has_cut(const Fragment& f);
/// Local check of every non-Open fragment node (Go_∞ rules, cut allowed).
/// Returns the first violation.
std::optional<std::string> fragment_violation(const Fragment& f, bool allow_cut = true);
/// Fragment as a proof graph with OPEN leaves; shared subtrees emitted once.
ProofGraph fragment_to_graph(const Fragment& f, const std::string& name = "fragment");
/// Fragment rebuilt from an acyclic graph with OPEN leaves.
Fragment fragment_from_graph(const ProofGraph& g);

struct DistanceReport {
  std::size_t agree = 0;  // largest m ≤ precision with equal m-fragments
  std::size_t precision = 0;
  bool exact = false;     // fragments differ at agree + 1 ≤ precision

  /// "1", "2^-m", or "≤ 2^-precision".
  std::string to_string() const;
};

DistanceReport proof_distance(const CoProof& p, const CoProof& q, std::size_t precision);

}  // namespace gocyclo
