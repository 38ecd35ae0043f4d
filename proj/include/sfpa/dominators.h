#pragma once

#include <span>
#include <vector>

#include "sfpa/fault_tree.h"

namespace sfpa {

/// Immediate dominators of a fault-tree DAG together with the topological
/// order they were computed over.
class DominatorInfo {
 public:
  NodeId root() const { return topo_order_.front(); }

  /// Immediate dominator of `v`; must not be called on the root.
  NodeId idom(NodeId v) const { return idom_[v.index()]; }
  bool has_idom(NodeId v) const { return v != root(); }

  /// Root first; every edge points forward.
  std::span<const NodeId> topo_order() const { return topo_order_; }
  std::uint32_t topo_index(NodeId v) const { return topo_index_[v.index()]; }

  /// Nodes whose immediate dominator is `v`, closest to `v` first
  /// (increasing topological index).
  std::span<const NodeId> dominated_by(NodeId v) const {
    return std::span<const NodeId>(dominated_).subspan(dominated_offset_[v.index()],
                                                        dominated_offset_[v.index() + 1] - dominated_offset_[v.index()]);
  }

 private:
  friend DominatorInfo immediate_dominators(const FaultTree& tree);

  std::vector<NodeId> idom_;
  std::vector<NodeId> topo_order_;
  std::vector<std::uint32_t> topo_index_;
  std::vector<std::uint32_t> dominated_offset_;  // n + 1 entries into dominated_
  std::vector<NodeId> dominated_;
};

/// Root first, each edge pointing forward, ties broken by smallest id.
std::vector<NodeId> topo_sort(const FaultTree& tree);

/// One pass of the iterative intersection algorithm over the topological
/// order. On a DAG every parent is final before its children are visited,
/// so no fixpoint iteration is needed.
DominatorInfo immediate_dominators(const FaultTree& tree);

/// True iff for all v strictly below w: idom(v) is at or below w, or idom(w)
/// is at or below idom(v). Quadratic; meant as a test oracle.
bool check_idom_ordering(const DominatorInfo& info, const FaultTree& tree);

/// descendants[v][w] is true iff there is a path v -> w (including v = w).
std::vector<std::vector<bool>> descendant_matrix(const FaultTree& tree);

}  // namespace sfpa
