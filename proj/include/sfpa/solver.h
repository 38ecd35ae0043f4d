#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "sfpa/analysis.h"
#include "sfpa/coefficient.h"
#include "sfpa/dominators.h"
#include "sfpa/fault_tree.h"
#include "sfpa/squarefree_poly.h"

namespace sfpa {

/// Dense variable numbering for the nodes with two or more parents.
class MultiparentIndex {
 public:
  explicit MultiparentIndex(const FaultTree& tree);

  std::size_t size() const { return nodes_.size(); }
  std::optional<Var> variable(NodeId v) const;
  bool contains(NodeId v) const { return variable(v).has_value(); }
  NodeId node(Var x) const { return nodes_[x]; }

 private:
  std::vector<Var> var_of_;  // kNone for single-parent nodes
  std::vector<NodeId> nodes_;
  static constexpr Var kNone = ~Var{0};
};

template <typename C>
struct SolveReport {
  C unreliability{0};
  /// Largest number of multiparent variables seen in any g_v.
  std::size_t max_live_vars = 0;
  std::size_t max_terms = 0;
  std::size_t substitutions = 0;
  std::size_t multiplications = 0;
  std::chrono::nanoseconds wall_time{0};

  /// Unreliability clamped into [0,1] for display; the raw value is kept above.
  double clamped() const;
};

/// Hooks for inspecting intermediate polynomials. Variables are numbered
/// by NodeId for `solve_sfpa` and by MultiparentIndex for `solve_sfpa2`.
template <typename C>
struct SolveObserver {
  /// After g_v is initialized and after every substitution into it.
  std::function<void(NodeId, const SquarefreePoly<C>&)> on_step;
  /// Once g_v is final (all F_w with idom(w) = v substituted).
  std::function<void(NodeId, const SquarefreePoly<C>&)> on_final;
};

/// Squarefree polynomial algorithm, literal form: every child gets a formal
/// variable, which is substituted away at its immediate dominator.
template <typename C>
SolveReport<C> solve_sfpa(const FaultTree& tree, const SolveObserver<C>& observer = {});

/// Optimized form: single-parent children are multiplied in directly, so
/// formal variables exist only for multiparent nodes.
template <typename C>
SolveReport<C> solve_sfpa2(const FaultTree& tree, const SolveObserver<C>& observer = {});

/// Classical bottom-up evaluation; throws NotATreeError on a shared node.
template <typename C>
C solve_treelike(const FaultTree& tree);

/// max over v of |{w multiparent : w strictly below v, v at or below idom(w)}|.
std::size_t variable_budget(const FaultTree& tree, const DominatorInfo& dom);

inline constexpr std::size_t kReductionCap = 16;

/// Finds one minimal cut set from the unreliability alone: the i-th BE by
/// name gets probability 10^(-2^i), U is computed exactly, and the exponent
/// -floor(log10 U) spells out the cut set in binary.
SafetyEvent minimal_cut_set_via_reduction(const FaultTree& tree, std::size_t cap = kReductionCap);

/// -floor(log10 value) for 0 < value <= 1, exactly.
std::size_t negative_log10_floor(const Rational& value);

extern template struct SolveReport<double>;
extern template struct SolveReport<Rational>;
extern template SolveReport<double> solve_sfpa<double>(const FaultTree&, const SolveObserver<double>&);
extern template SolveReport<Rational> solve_sfpa<Rational>(const FaultTree&, const SolveObserver<Rational>&);
extern template SolveReport<double> solve_sfpa2<double>(const FaultTree&, const SolveObserver<double>&);
extern template SolveReport<Rational> solve_sfpa2<Rational>(const FaultTree&, const SolveObserver<Rational>&);
extern template double solve_treelike<double>(const FaultTree&);
extern template Rational solve_treelike<Rational>(const FaultTree&);

}  // namespace sfpa
