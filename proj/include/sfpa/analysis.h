#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "sfpa/coefficient.h"
#include "sfpa/fault_tree.h"

namespace sfpa {

inline constexpr std::size_t kDefaultEnumerationCap = 20;

/// Assignment of a state to every BE of one tree, stored in the order of
/// `FaultTree::basic_events()`.
class SafetyEvent {
 public:
  SafetyEvent() = default;
  explicit SafetyEvent(std::vector<bool> states) : states_(std::move(states)) {}
  /// All-false event for `tree`.
  explicit SafetyEvent(const FaultTree& tree) : states_(tree.basic_events().size(), false) {}

  std::size_t size() const { return states_.size(); }
  bool operator[](std::size_t position) const { return states_[position]; }
  void set(std::size_t position, bool state) { states_[position] = state; }

  bool at(const FaultTree& tree, NodeId be) const { return states_[tree.basic_event_position(be)]; }
  void set(const FaultTree& tree, NodeId be, bool state) { states_[tree.basic_event_position(be)] = state; }

  /// Componentwise order: every failed BE of `*this` also fails in `other`.
  bool is_below(const SafetyEvent& other) const;
  std::size_t failed_count() const;

  /// Bit string in BE order, e.g. "010".
  std::string to_string() const;

  friend bool operator==(const SafetyEvent&, const SafetyEvent&) = default;

 private:
  std::vector<bool> states_;
};

/// States for the CBEs of a PCFT.
using ControlAssignment = std::map<NodeId, bool>;

/// Boolean value of node `v` under `event`. CBEs take their state from
/// `control`; a missing CBE is a PreconditionError.
bool structure_function(const FaultTree& tree, NodeId v, const SafetyEvent& event,
                        const ControlAssignment& control = {});

/// Every safety event that fails the root, in increasing bit-string order.
std::vector<SafetyEvent> cut_sets(const FaultTree& tree, std::size_t cap = kDefaultEnumerationCap);

/// Unreliability by exhaustive summation over all 2^|BE| safety events.
template <typename C>
C oracle_unreliability(const FaultTree& tree, std::size_t cap = kDefaultEnumerationCap);

/// Probability that the root fails when the CBEs are fixed to `control`.
template <typename C>
C pcft_unreliability(const Pcft& tree, const ControlAssignment& control,
                     std::size_t cap = kDefaultEnumerationCap);

extern template double oracle_unreliability<double>(const FaultTree&, std::size_t);
extern template Rational oracle_unreliability<Rational>(const FaultTree&, std::size_t);
extern template double pcft_unreliability<double>(const Pcft&, const ControlAssignment&, std::size_t);
extern template Rational pcft_unreliability<Rational>(const Pcft&, const ControlAssignment&, std::size_t);

}  // namespace sfpa
