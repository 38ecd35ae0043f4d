#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sfpa/coefficient.h"

namespace sfpa {

/// Dense index of a node within one tree. Ids follow declaration order.
class NodeId {
 public:
  constexpr NodeId() = default;
  constexpr explicit NodeId(std::uint32_t index) : index_(index) {}

  constexpr std::uint32_t index() const { return index_; }

  friend constexpr auto operator<=>(NodeId, NodeId) = default;

 private:
  std::uint32_t index_ = 0;
};

enum class GateKind : std::uint8_t { kAnd, kOr, kBe, kCbe };

std::string_view to_string(GateKind kind);

inline bool is_gate(GateKind kind) { return kind == GateKind::kAnd || kind == GateKind::kOr; }
inline bool is_leaf(GateKind kind) { return !is_gate(kind); }

/// A static fault tree: a rooted DAG of AND/OR gates over basic events.
///
/// Leaves may also be controllable basic events (CBEs), whose state is set
/// externally instead of drawn at random; a tree with at least one CBE is a
/// partially controllable fault tree (see `Pcft`). Instances are immutable
/// and always valid: construction goes through `FaultTreeBuilder`.
class FaultTree {
 public:
  std::size_t size() const { return names_.size(); }
  NodeId root() const { return root_; }

  const std::string& name(NodeId v) const { return names_[v.index()]; }
  GateKind kind(NodeId v) const { return kinds_[v.index()]; }
  std::span<const NodeId> children(NodeId v) const { return children_[v.index()]; }
  std::span<const NodeId> parents(NodeId v) const { return parents_[v.index()]; }

  /// Failure probability of a BE. Undefined for other kinds.
  double probability(NodeId v) const { return probabilities_[v.index()]; }
  const Rational& exact_probability(NodeId v) const { return exact_probabilities_[v.index()]; }

  std::optional<NodeId> find(std::string_view name) const;
  /// Like `find`, but throws `std::out_of_range` for unknown names.
  NodeId at(std::string_view name) const;

  /// BEs in id order; a BE's position here is its slot in a `SafetyEvent`.
  std::span<const NodeId> basic_events() const { return basic_events_; }
  std::size_t basic_event_position(NodeId v) const { return leaf_position_[v.index()]; }
  std::span<const NodeId> controllable_events() const { return controllable_events_; }
  std::size_t controllable_position(NodeId v) const { return leaf_position_[v.index()]; }
  std::size_t gate_count() const { return size() - basic_events_.size() - controllable_events_.size(); }

  bool is_pcft() const { return !controllable_events_.empty(); }
  /// Number of nodes with two or more parents.
  std::size_t multiparent_count() const;
  bool is_treelike() const { return multiparent_count() == 0; }

  /// Root first, every edge pointing forward; ties broken by smallest id.
  std::span<const NodeId> topological_order() const { return topological_order_; }

  /// Copy with one BE's failure probability replaced.
  FaultTree with_probability(NodeId be, const Rational& probability) const;

 private:
  friend class FaultTreeBuilder;
  FaultTree() = default;

  std::vector<std::string> names_;
  std::vector<GateKind> kinds_;
  std::vector<std::vector<NodeId>> children_;
  std::vector<std::vector<NodeId>> parents_;
  std::vector<double> probabilities_;
  std::vector<Rational> exact_probabilities_;
  std::vector<NodeId> basic_events_;
  std::vector<NodeId> controllable_events_;
  std::vector<std::size_t> leaf_position_;
  std::vector<NodeId> topological_order_;
  std::unordered_map<std::string, NodeId> index_;
  NodeId root_;
};

/// A partially controllable fault tree. Same representation; CBE leaves allowed.
using Pcft = FaultTree;

/// Collects declarations in any order and validates them into a FaultTree.
/// Nodes receive ids in declaration order.
class FaultTreeBuilder {
 public:
  FaultTreeBuilder& add_gate(std::string name, GateKind kind, std::vector<std::string> children);
  FaultTreeBuilder& add_basic_event(std::string name, Rational probability);
  FaultTreeBuilder& add_basic_event(std::string name, double probability);
  FaultTreeBuilder& add_controllable_event(std::string name);
  FaultTreeBuilder& set_root(std::string name);

  /// Throws ValidationError on unknown references, duplicates, cycles,
  /// probabilities outside [0,1], empty gates, or a root count other than one.
  FaultTree build() const;

 private:
  struct Declaration {
    std::string name;
    GateKind kind;
    std::vector<std::string> children;
    Rational probability;
  };
  std::vector<Declaration> declarations_;
  std::vector<std::string> roots_;
};

/// Same names, kinds, child names, root and exact probabilities.
/// Node ids may differ.
bool isomorphic(const FaultTree& a, const FaultTree& b);

}  // namespace sfpa

template <>
struct std::hash<sfpa::NodeId> {
  std::size_t operator()(sfpa::NodeId v) const noexcept { return std::hash<std::uint32_t>{}(v.index()); }
};
