#pragma once

#include <boost/container/small_vector.hpp>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace sfpa {

/// Index of a formal variable F_x. Indices come from a registry owned by
/// whoever builds the polynomials (the solver uses dense multiparent ids).
using Var = std::uint32_t;

/// Set of variables, i.e. the monomial prod_{x in Y} F_x.
///
/// Stored as a sparse bitset: sorted 64-bit blocks, zero blocks omitted, so
/// a monomial over a few high-numbered variables stays small and the
/// representation is canonical.
class VarSet {
 public:
  VarSet() = default;
  static VarSet of(std::initializer_list<Var> vars);

  bool empty() const { return blocks_.empty(); }
  std::size_t count() const;
  bool contains(Var x) const;

  void insert(Var x);
  void erase(Var x);

  VarSet operator|(const VarSet& other) const;
  bool is_subset_of(const VarSet& other) const;
  bool intersects(const VarSet& other) const;

  /// Members in increasing order.
  std::vector<Var> to_vector() const;
  template <typename F>
  void for_each(F&& f) const {
    for (const Block& b : blocks_) {
      for (std::uint64_t bits = b.bits; bits != 0; bits &= bits - 1) {
        f(static_cast<Var>(b.index * 64 + static_cast<Var>(__builtin_ctzll(bits))));
      }
    }
  }

  std::size_t hash() const;

  friend bool operator==(const VarSet& a, const VarSet& b) { return a.blocks_ == b.blocks_; }
  /// Orders by cardinality, then by the bitset read as a binary number.
  friend std::strong_ordering operator<=>(const VarSet& a, const VarSet& b);

 private:
  struct Block {
    std::uint32_t index;
    std::uint64_t bits;
    friend bool operator==(const Block&, const Block&) = default;
  };
  boost::container::small_vector<Block, 1> blocks_;
};

struct VarSetHash {
  std::size_t operator()(const VarSet& s) const { return s.hash(); }
};

}  // namespace sfpa
