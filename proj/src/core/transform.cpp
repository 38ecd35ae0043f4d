#include "sfpa/transform.h"

#include <algorithm>
#include <unordered_set>

#include "sfpa/error.h"

namespace sfpa {

namespace {

std::vector<std::string> child_names(const FaultTree& tree, NodeId v) {
  std::vector<std::string> names;
  for (NodeId w : tree.children(v)) names.push_back(tree.name(w));
  return names;
}

/// Re-declares node `v` of `tree` into `builder`, optionally as a CBE.
void declare(FaultTreeBuilder& builder, const FaultTree& tree, NodeId v, bool as_controllable,
             std::vector<std::string> children) {
  if (as_controllable || tree.kind(v) == GateKind::kCbe) {
    builder.add_controllable_event(tree.name(v));
  } else if (tree.kind(v) == GateKind::kBe) {
    builder.add_basic_event(tree.name(v), tree.exact_probability(v));
  } else {
    builder.add_gate(tree.name(v), tree.kind(v), std::move(children));
  }
}

/// Marks nodes reachable from `start`, not descending below `stop` nodes.
std::vector<char> reachable(const FaultTree& tree, NodeId start, const std::vector<char>& stop) {
  std::vector<char> seen(tree.size(), 0);
  std::vector<NodeId> stack{start};
  seen[start.index()] = 1;
  while (!stack.empty()) {
    NodeId v = stack.back();
    stack.pop_back();
    if (stop[v.index()]) continue;
    for (NodeId w : tree.children(v)) {
      if (!seen[w.index()]) {
        seen[w.index()] = 1;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

}  // namespace

FaultTree subtree(const FaultTree& tree, NodeId v) {
  auto keep = reachable(tree, v, std::vector<char>(tree.size(), 0));
  FaultTreeBuilder builder;
  for (std::uint32_t i = 0; i < tree.size(); ++i) {
    if (keep[i]) declare(builder, tree, NodeId(i), false, child_names(tree, NodeId(i)));
  }
  builder.set_root(tree.name(v));
  return builder.build();
}

Pcft restrict_to_controllable(const FaultTree& tree, const std::vector<NodeId>& controlled) {
  std::vector<char> cut(tree.size(), 0);
  for (NodeId v : controlled) cut[v.index()] = 1;
  auto keep = reachable(tree, tree.root(), cut);
  FaultTreeBuilder builder;
  for (std::uint32_t i = 0; i < tree.size(); ++i) {
    if (keep[i]) declare(builder, tree, NodeId(i), cut[i] != 0, child_names(tree, NodeId(i)));
  }
  builder.set_root(tree.name(tree.root()));
  return builder.build();
}

Pcft compose(const Pcft& outer, NodeId v, const Pcft& inner) {
  using Kind = CompositionError::Kind;
  const std::string& replaced = outer.name(v);
  if (outer.kind(v) != GateKind::kCbe) {
    throw CompositionError(Kind::kNotControllable, replaced, "\"" + replaced + "\" is not a controllable event");
  }
  if (inner.find(replaced)) {
    throw CompositionError(Kind::kNameClash, replaced, "\"" + replaced + "\" also occurs in the inserted tree");
  }

  std::unordered_set<std::string> shared;
  for (std::uint32_t i = 0; i < inner.size(); ++i) {
    const NodeId w(i);
    auto match = outer.find(inner.name(w));
    if (!match) continue;
    const std::string& name = inner.name(w);
    if (inner.kind(w) == GateKind::kBe || outer.kind(*match) == GateKind::kBe) {
      if (inner.kind(w) == outer.kind(*match)) {
        throw CompositionError(Kind::kSharedBasicEvent, name, "basic event \"" + name + "\" occurs in both trees");
      }
    }
    auto a = child_names(inner, w);
    auto b = child_names(outer, *match);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (inner.kind(w) != outer.kind(*match) || a != b) {
      throw CompositionError(Kind::kInconsistentSharedNode, name,
                             "shared node \"" + name + "\" differs between the two trees");
    }
    shared.insert(name);
  }

  const std::string& inner_root = inner.name(inner.root());
  FaultTreeBuilder builder;
  for (std::uint32_t i = 0; i < outer.size(); ++i) {
    const NodeId w(i);
    if (w == v) continue;
    auto children = child_names(outer, w);
    std::replace(children.begin(), children.end(), replaced, inner_root);
    declare(builder, outer, w, false, std::move(children));
  }
  for (std::uint32_t i = 0; i < inner.size(); ++i) {
    const NodeId w(i);
    if (!shared.count(inner.name(w))) declare(builder, inner, w, false, child_names(inner, w));
  }
  builder.set_root(outer.root() == v ? inner_root : outer.name(outer.root()));
  return builder.build();
}

}  // namespace sfpa
