#include "sfpa/fault_tree.h"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>
#include <unordered_set>

#include "sfpa/error.h"

namespace sfpa {

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::kAnd:
      return "and";
    case GateKind::kOr:
      return "or";
    case GateKind::kBe:
      return "be";
    case GateKind::kCbe:
      return "cbe";
  }
  return "?";
}

std::optional<NodeId> FaultTree::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NodeId FaultTree::at(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw std::out_of_range("no node named \"" + std::string(name) + "\"");
}

std::size_t FaultTree::multiparent_count() const {
  return static_cast<std::size_t>(
      std::count_if(parents_.begin(), parents_.end(), [](const auto& p) { return p.size() >= 2; }));
}

FaultTree FaultTree::with_probability(NodeId be, const Rational& probability) const {
  if (kind(be) != GateKind::kBe) throw std::invalid_argument("\"" + name(be) + "\" is not a basic event");
  if (probability < 0 || probability > 1) {
    throw ValidationError(ValidationError::Kind::kProbabilityOutOfRange, name(be),
                          "probability of \"" + name(be) + "\" outside [0,1]");
  }
  FaultTree copy = *this;
  copy.exact_probabilities_[be.index()] = probability;
  copy.exact_probabilities_[be.index()].canonicalize();
  copy.probabilities_[be.index()] = nearest_double(probability);
  return copy;
}

FaultTreeBuilder& FaultTreeBuilder::add_gate(std::string name, GateKind kind,
                                             std::vector<std::string> children) {
  if (!is_gate(kind)) throw std::invalid_argument("add_gate requires an AND or OR kind");
  declarations_.push_back({std::move(name), kind, std::move(children), Rational(0)});
  return *this;
}

FaultTreeBuilder& FaultTreeBuilder::add_basic_event(std::string name, Rational probability) {
  probability.canonicalize();
  declarations_.push_back({std::move(name), GateKind::kBe, {}, std::move(probability)});
  return *this;
}

FaultTreeBuilder& FaultTreeBuilder::add_basic_event(std::string name, double probability) {
  // NaN would make the range check below pass silently.
  if (!(probability >= 0.0 && probability <= 1.0)) {
    throw ValidationError(ValidationError::Kind::kProbabilityOutOfRange, name,
                          "probability of \"" + name + "\" outside [0,1]");
  }
  return add_basic_event(std::move(name), Rational(probability));
}

FaultTreeBuilder& FaultTreeBuilder::add_controllable_event(std::string name) {
  declarations_.push_back({std::move(name), GateKind::kCbe, {}, Rational(0)});
  return *this;
}

FaultTreeBuilder& FaultTreeBuilder::set_root(std::string name) {
  roots_.push_back(std::move(name));
  return *this;
}

namespace {

using Kind = ValidationError::Kind;

[[noreturn]] void fail(Kind kind, const std::string& node, const std::string& message) {
  throw ValidationError(kind, node, message);
}

std::string quoted(const std::string& name) { return "\"" + name + "\""; }

}  // namespace

FaultTree FaultTreeBuilder::build() const {
  FaultTree tree;
  const std::size_t n = declarations_.size();

  for (std::size_t i = 0; i < n; ++i) {
    const auto& decl = declarations_[i];
    auto [it, inserted] = tree.index_.emplace(decl.name, NodeId(static_cast<std::uint32_t>(i)));
    if (!inserted) fail(Kind::kDuplicateDefinition, decl.name, "duplicate definition of " + quoted(decl.name));
  }

  if (roots_.empty()) fail(Kind::kNoRoot, "", "no toplevel declaration");
  if (roots_.size() > 1) fail(Kind::kMultipleRoots, roots_[1], "toplevel declared more than once");
  auto root_it = tree.index_.find(roots_.front());
  if (root_it == tree.index_.end()) {
    fail(Kind::kUnknownReference, roots_.front(), "toplevel refers to undeclared node " + quoted(roots_.front()));
  }
  tree.root_ = root_it->second;

  tree.names_.reserve(n);
  tree.kinds_.reserve(n);
  tree.children_.resize(n);
  tree.parents_.resize(n);
  tree.probabilities_.assign(n, 0.0);
  tree.exact_probabilities_.assign(n, Rational(0));
  tree.leaf_position_.assign(n, 0);

  for (std::size_t i = 0; i < n; ++i) {
    const auto& decl = declarations_[i];
    const NodeId v(static_cast<std::uint32_t>(i));
    tree.names_.push_back(decl.name);
    tree.kinds_.push_back(decl.kind);

    if (is_gate(decl.kind)) {
      if (decl.children.empty()) fail(Kind::kEmptyGate, decl.name, "gate " + quoted(decl.name) + " has no children");
      std::unordered_set<std::string> seen;
      for (const auto& child : decl.children) {
        auto it = tree.index_.find(child);
        if (it == tree.index_.end()) {
          fail(Kind::kUnknownReference, child,
               "gate " + quoted(decl.name) + " refers to undeclared node " + quoted(child));
        }
        if (!seen.insert(child).second) {
          fail(Kind::kDuplicateChild, child, "gate " + quoted(decl.name) + " lists " + quoted(child) + " twice");
        }
        tree.children_[i].push_back(it->second);
        tree.parents_[it->second.index()].push_back(v);
      }
    } else if (decl.kind == GateKind::kBe) {
      if (decl.probability < 0 || decl.probability > 1) {
        fail(Kind::kProbabilityOutOfRange, decl.name, "probability of " + quoted(decl.name) + " outside [0,1]");
      }
      tree.exact_probabilities_[i] = decl.probability;
      tree.probabilities_[i] = nearest_double(decl.probability);
      tree.leaf_position_[i] = tree.basic_events_.size();
      tree.basic_events_.push_back(v);
    } else {
      tree.leaf_position_[i] = tree.controllable_events_.size();
      tree.controllable_events_.push_back(v);
    }
  }
  for (auto& parents : tree.parents_) std::sort(parents.begin(), parents.end());

  // Kahn's algorithm with a min-heap gives the deterministic order and
  // detects cycles in one pass.
  std::vector<std::size_t> in_degree(n);
  for (std::size_t i = 0; i < n; ++i) in_degree[i] = tree.parents_[i].size();
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (in_degree[i] == 0) ready.push(NodeId(static_cast<std::uint32_t>(i)));
  }
  while (!ready.empty()) {
    NodeId v = ready.top();
    ready.pop();
    tree.topological_order_.push_back(v);
    for (NodeId w : tree.children_[v.index()]) {
      if (--in_degree[w.index()] == 0) ready.push(w);
    }
  }
  if (tree.topological_order_.size() != n) {
    // Every unprocessed node has an unprocessed parent; walking parents
    // inside that set must revisit a node, and that node lies on a cycle.
    std::vector<char> visited(n, 0);
    std::uint32_t v = 0;
    while (in_degree[v] == 0) ++v;
    while (!visited[v]) {
      visited[v] = 1;
      for (NodeId p : tree.parents_[v]) {
        if (in_degree[p.index()] != 0) {
          v = p.index();
          break;
        }
      }
    }
    fail(Kind::kCycle, tree.names_[v], "cycle through " + quoted(tree.names_[v]));
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (tree.parents_[i].empty() && NodeId(static_cast<std::uint32_t>(i)) != tree.root_) {
      fail(Kind::kMultipleRoots, tree.names_[i],
           "node " + quoted(tree.names_[i]) + " has no parents but is not the toplevel (unreachable from root)");
    }
  }
  if (!tree.parents_[tree.root_.index()].empty()) {
    fail(Kind::kMultipleRoots, tree.names_[tree.root_.index()],
         "toplevel " + quoted(tree.names_[tree.root_.index()]) + " has parents");
  }
  return tree;
}

bool isomorphic(const FaultTree& a, const FaultTree& b) {
  if (a.size() != b.size() || a.name(a.root()) != b.name(b.root())) return false;
  for (std::uint32_t i = 0; i < a.size(); ++i) {
    const NodeId v(i);
    auto w = b.find(a.name(v));
    if (!w || a.kind(v) != b.kind(*w)) return false;
    if (a.kind(v) == GateKind::kBe && a.exact_probability(v) != b.exact_probability(*w)) return false;
    auto ca = a.children(v);
    auto cb = b.children(*w);
    if (ca.size() != cb.size()) return false;
    std::vector<std::string> na, nb;
    for (NodeId c : ca) na.push_back(a.name(c));
    for (NodeId c : cb) nb.push_back(b.name(c));
    std::sort(na.begin(), na.end());
    std::sort(nb.begin(), nb.end());
    if (na != nb) return false;
  }
  return true;
}

}  // namespace sfpa
