#pragma once

#include <vector>

#include "sfpa/fault_tree.h"

namespace sfpa {

/// The descendants of `v`, with `v` as root. Kinds and probabilities are kept;
/// relative id order is preserved.
FaultTree subtree(const FaultTree& tree, NodeId v);

/// Turns every node in `controlled` into a CBE, drops its outgoing edges and
/// keeps only what is still reachable from the root.
Pcft restrict_to_controllable(const FaultTree& tree, const std::vector<NodeId>& controlled);

/// Quasimodular composition: replaces CBE `v` of `outer` by the whole of
/// `inner`, re-pointing the parents of `v` to the root of `inner`.
///
/// Nodes are matched by name. Nodes present in both trees must agree on
/// kind and children, and the trees may not share a BE. The result's ids
/// list `outer`'s nodes first (minus `v`), then the new nodes of `inner`.
Pcft compose(const Pcft& outer, NodeId v, const Pcft& inner);

}  // namespace sfpa
