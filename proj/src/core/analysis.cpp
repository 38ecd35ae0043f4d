#include "sfpa/analysis.h"

#include <algorithm>

#include "sfpa/error.h"

namespace sfpa {

bool SafetyEvent::is_below(const SafetyEvent& other) const {
  for (std::size_t i = 0; i < states_.size(); ++i) {
    if (states_[i] && !other.states_[i]) return false;
  }
  return true;
}

std::size_t SafetyEvent::failed_count() const {
  return static_cast<std::size_t>(std::count(states_.begin(), states_.end(), true));
}

std::string SafetyEvent::to_string() const {
  std::string out;
  out.reserve(states_.size());
  for (bool s : states_) out += s ? '1' : '0';
  return out;
}

namespace {

bool control_state(const FaultTree& tree, NodeId v, const ControlAssignment& control) {
  auto it = control.find(v);
  if (it == control.end()) {
    throw PreconditionError("no state given for controllable event \"" + tree.name(v) + "\"");
  }
  return it->second;
}

/// Bottom-up Boolean evaluation of every node; leaf states must be filled in.
void propagate(const FaultTree& tree, std::vector<char>& value) {
  auto order = tree.topological_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    NodeId v = *it;
    GateKind kind = tree.kind(v);
    if (kind == GateKind::kAnd) {
      char result = 1;
      for (NodeId w : tree.children(v)) result &= value[w.index()];
      value[v.index()] = result;
    } else if (kind == GateKind::kOr) {
      char result = 0;
      for (NodeId w : tree.children(v)) result |= value[w.index()];
      value[v.index()] = result;
    }
  }
}

void check_cap(const FaultTree& tree, std::size_t cap) {
  std::size_t n = tree.basic_events().size();
  if (n > cap || n >= 63) throw CapExceededError(n, cap);
}

/// Calls `visit(mask, root_failed)` for every BE assignment. Bit (n-1-i) of
/// `mask` is the state of basic_events()[i].
template <typename Visit>
void enumerate(const FaultTree& tree, const ControlAssignment& control, Visit visit) {
  std::vector<char> value(tree.size(), 0);
  for (NodeId c : tree.controllable_events()) value[c.index()] = control_state(tree, c, control) ? 1 : 0;
  auto events = tree.basic_events();
  const std::size_t n = events.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    for (std::size_t i = 0; i < n; ++i) value[events[i].index()] = static_cast<char>((mask >> (n - 1 - i)) & 1);
    propagate(tree, value);
    visit(mask, value[tree.root().index()] != 0);
  }
}

}  // namespace

bool structure_function(const FaultTree& tree, NodeId v, const SafetyEvent& event, const ControlAssignment& control) {
  if (event.size() != tree.basic_events().size()) {
    throw PreconditionError("safety event does not cover the basic events of the tree");
  }
  switch (tree.kind(v)) {
    case GateKind::kBe:
      return event.at(tree, v);
    case GateKind::kCbe:
      return control_state(tree, v, control);
    case GateKind::kAnd:
      for (NodeId w : tree.children(v)) {
        if (!structure_function(tree, w, event, control)) return false;
      }
      return true;
    case GateKind::kOr:
      for (NodeId w : tree.children(v)) {
        if (structure_function(tree, w, event, control)) return true;
      }
      return false;
  }
  return false;
}

std::vector<SafetyEvent> cut_sets(const FaultTree& tree, std::size_t cap) {
  check_cap(tree, cap);
  const std::size_t n = tree.basic_events().size();
  std::vector<SafetyEvent> result;
  enumerate(tree, {}, [&](std::uint64_t mask, bool failed) {
    if (!failed) return;
    SafetyEvent event(tree);
    for (std::size_t i = 0; i < n; ++i) event.set(i, ((mask >> (n - 1 - i)) & 1) != 0);
    result.push_back(std::move(event));
  });
  return result;
}

template <typename C>
C pcft_unreliability(const Pcft& tree, const ControlAssignment& control, std::size_t cap) {
  check_cap(tree, cap);
  auto events = tree.basic_events();
  const std::size_t n = events.size();
  std::vector<C> fail(n), survive(n);
  for (std::size_t i = 0; i < n; ++i) {
    fail[i] = CoefficientTraits<C>::from_rational(tree.exact_probability(events[i]));
    survive[i] = C(1) - fail[i];
  }
  C total(0);
  enumerate(tree, control, [&](std::uint64_t mask, bool failed) {
    if (!failed) return;
    C weight(1);
    for (std::size_t i = 0; i < n; ++i) weight *= ((mask >> (n - 1 - i)) & 1) ? fail[i] : survive[i];
    total += weight;
  });
  return total;
}

template <typename C>
C oracle_unreliability(const FaultTree& tree, std::size_t cap) {
  if (tree.is_pcft()) throw PreconditionError("oracle_unreliability needs a tree without controllable events");
  return pcft_unreliability<C>(tree, {}, cap);
}

template double oracle_unreliability<double>(const FaultTree&, std::size_t);
template Rational oracle_unreliability<Rational>(const FaultTree&, std::size_t);
template double pcft_unreliability<double>(const Pcft&, const ControlAssignment&, std::size_t);
template Rational pcft_unreliability<Rational>(const Pcft&, const ControlAssignment&, std::size_t);

}  // namespace sfpa
