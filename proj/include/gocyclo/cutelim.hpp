#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gocyclo/admissible.hpp"

namespace gocyclo {

/// (π, τ) with π ⊢ Γ ⇒ Δ, A and τ ⊢ A, Γ ⇒ Δ.
struct CutPair {
  CoProof left;
  CoProof right;
  Formula cut_formula;
  Sequent cut_result;
};

/// Classifies (π, τ) as a cut pair with cut formula `a`.
std::optional<CutPair> as_cut_pair(const CoProof& pi, const CoProof& tau, Formula a);

/// Budget of one engine call: right premises of BOX crossed since the
/// queried root, and the sum of the local heights of the arguments.
struct Fuel {
  std::size_t depth_consumed = 0;
  std::size_t height_budget = 0;
};

/// True when `child` is strictly below `parent` in the termination order:
/// deeper, or equally deep with a smaller height budget.
bool fuel_decreases(const Fuel& parent, const Fuel& child);

struct CallRecord {
  std::size_t id = 0;
  std::optional<std::size_t> parent;
  /// Calls of one family share a fixed point (ce, or re for one formula);
  /// only calls within a family are subject to the decrease check.
  std::string family;
  std::string op;
  Fuel fuel;
  bool memo_hit = false;
};

struct FuelReport {
  bool ok = true;
  std::size_t calls = 0;
  std::size_t checked = 0;  // parent/child pairs within one family
  std::size_t max_depth = 0;
  /// Call chain from the root to the first violating call.
  std::vector<CallRecord> violation;

  std::string to_string() const;
};

FuelReport fuel_audit(const std::vector<CallRecord>& trace);

/// Raised when tracing detects a recursive call that does not decrease its
/// fuel and EngineOptions::throw_on_violation is set.
class FuelViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct EngineOptions {
  /// Record every call with its fuel; local heights of all arguments are
  /// forced to compute the budget.
  bool trace = false;
  bool throw_on_violation = false;
  bool memoize = true;
  /// Test fixture: the □-against-□ case passes the unclipped left proof in
  /// place of its left premise, so its height budget does not shrink.
  bool miswire_hard_case = false;
};

/// A map sending cut pairs with one fixed cut formula to proofs of their
/// cut results.
using RemovingMap = std::function<CoProof(const CoProof&, const CoProof&)>;

namespace detail {
struct EngineState;
}

/// Cut elimination by guarded corecursion. Results are lazy; each recursive
/// reference is evaluated when the corresponding premise is forced. The
/// engine must stay alive only as long as its trace is wanted; produced
/// proofs keep the state they need.
class Engine {
 public:
  explicit Engine(EngineOptions options = {});

  /// Removal of an atomic cut formula, by recursion on the left proof.
  CoProof re_atom(Formula q, const CoProof& pi, const CoProof& tau);
  /// One unfolding of the □b-removal operator with `u` as the recursive
  /// reference and this engine's b-removal.
  CoProof gbox_step(Formula b, const RemovingMap& u, const CoProof& pi, const CoProof& tau);
  /// A-removal by structure of `a`.
  CoProof re(Formula a, const CoProof& pi, const CoProof& tau);
  /// Cut elimination; the endpoint is unchanged and no fragment of the
  /// result contains a cut.
  CoProof ce(const CoProof& p);

  const EngineOptions& options() const;
  std::vector<CallRecord> trace() const;
  FuelReport audit() const;

 private:
  std::shared_ptr<detail::EngineState> state_;
};

/// Joins a cut pair for `a` with a cut; any other pair yields `pi`.
CoProof u_cut(Formula a, const CoProof& pi, const CoProof& tau);

CoProof re(Formula a, const CoProof& pi, const CoProof& tau);
CoProof ce(const CoProof& p);

}  // namespace gocyclo
