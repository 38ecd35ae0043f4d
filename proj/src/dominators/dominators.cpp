#include "sfpa/dominators.h"

#include <algorithm>

namespace sfpa {

std::vector<NodeId> topo_sort(const FaultTree& tree) {
  auto order = tree.topological_order();
  return {order.begin(), order.end()};
}

DominatorInfo immediate_dominators(const FaultTree& tree) {
  DominatorInfo info;
  const std::size_t n = tree.size();
  info.topo_order_ = topo_sort(tree);
  info.topo_index_.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) info.topo_index_[info.topo_order_[i].index()] = i;

  const NodeId root = tree.root();
  info.idom_.assign(n, root);
  auto intersect = [&](NodeId a, NodeId b) {
    while (a != b) {
      while (info.topo_index_[a.index()] > info.topo_index_[b.index()]) a = info.idom_[a.index()];
      while (info.topo_index_[b.index()] > info.topo_index_[a.index()]) b = info.idom_[b.index()];
    }
    return a;
  };
  for (NodeId v : info.topo_order_) {
    if (v == root) continue;
    auto parents = tree.parents(v);
    NodeId dom = parents.front();
    for (NodeId p : parents.subspan(1)) dom = intersect(dom, p);
    info.idom_[v.index()] = dom;
  }

  // Bucket by idom; scanning in topological order keeps each bucket sorted.
  info.dominated_offset_.assign(n + 1, 0);
  for (NodeId v : info.topo_order_) {
    if (v != root) ++info.dominated_offset_[info.idom_[v.index()].index() + 1];
  }
  for (std::size_t i = 0; i < n; ++i) info.dominated_offset_[i + 1] += info.dominated_offset_[i];
  info.dominated_.resize(n == 0 ? 0 : n - 1);
  std::vector<std::uint32_t> fill(info.dominated_offset_.begin(), info.dominated_offset_.end() - 1);
  for (NodeId v : info.topo_order_) {
    if (v != root) info.dominated_[fill[info.idom_[v.index()].index()]++] = v;
  }
  return info;
}

std::vector<std::vector<bool>> descendant_matrix(const FaultTree& tree) {
  const std::size_t n = tree.size();
  std::vector<std::vector<bool>> below(n, std::vector<bool>(n, false));
  auto order = tree.topological_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    auto& row = below[it->index()];
    row[it->index()] = true;
    for (NodeId w : tree.children(*it)) {
      const auto& child_row = below[w.index()];
      for (std::size_t k = 0; k < n; ++k) {
        if (child_row[k]) row[k] = true;
      }
    }
  }
  return below;
}

bool check_idom_ordering(const DominatorInfo& info, const FaultTree& tree) {
  auto below = descendant_matrix(tree);
  // preceq(x, y): y reaches x.
  auto preceq = [&](NodeId x, NodeId y) { return static_cast<bool>(below[y.index()][x.index()]); };
  for (std::uint32_t i = 0; i < tree.size(); ++i) {
    const NodeId v(i);
    if (!info.has_idom(v)) continue;
    for (std::uint32_t j = 0; j < tree.size(); ++j) {
      const NodeId w(j);
      if (w == v || !preceq(v, w)) continue;
      if (preceq(info.idom(v), w)) continue;
      if (info.has_idom(w) && preceq(info.idom(w), info.idom(v))) continue;
      return false;
    }
  }
  return true;
}

}  // namespace sfpa
