#include "sfpa/var_set.h"

#include <algorithm>

namespace sfpa {

VarSet VarSet::of(std::initializer_list<Var> vars) {
  VarSet s;
  for (Var x : vars) s.insert(x);
  return s;
}

std::size_t VarSet::count() const {
  std::size_t n = 0;
  for (const Block& b : blocks_) n += static_cast<std::size_t>(__builtin_popcountll(b.bits));
  return n;
}

bool VarSet::contains(Var x) const {
  const std::uint32_t index = x / 64;
  auto it = std::lower_bound(blocks_.begin(), blocks_.end(), index,
                             [](const Block& b, std::uint32_t i) { return b.index < i; });
  return it != blocks_.end() && it->index == index && ((it->bits >> (x % 64)) & 1) != 0;
}

void VarSet::insert(Var x) {
  const std::uint32_t index = x / 64;
  auto it = std::lower_bound(blocks_.begin(), blocks_.end(), index,
                             [](const Block& b, std::uint32_t i) { return b.index < i; });
  if (it == blocks_.end() || it->index != index) it = blocks_.insert(it, Block{index, 0});
  it->bits |= std::uint64_t{1} << (x % 64);
}

void VarSet::erase(Var x) {
  const std::uint32_t index = x / 64;
  auto it = std::lower_bound(blocks_.begin(), blocks_.end(), index,
                             [](const Block& b, std::uint32_t i) { return b.index < i; });
  if (it == blocks_.end() || it->index != index) return;
  it->bits &= ~(std::uint64_t{1} << (x % 64));
  if (it->bits == 0) blocks_.erase(it);
}

VarSet VarSet::operator|(const VarSet& other) const {
  VarSet out;
  out.blocks_.reserve(std::max(blocks_.size(), other.blocks_.size()));
  auto a = blocks_.begin();
  auto b = other.blocks_.begin();
  while (a != blocks_.end() && b != other.blocks_.end()) {
    if (a->index < b->index) {
      out.blocks_.push_back(*a++);
    } else if (b->index < a->index) {
      out.blocks_.push_back(*b++);
    } else {
      out.blocks_.push_back(Block{a->index, a->bits | b->bits});
      ++a;
      ++b;
    }
  }
  out.blocks_.insert(out.blocks_.end(), a, blocks_.end());
  out.blocks_.insert(out.blocks_.end(), b, other.blocks_.end());
  return out;
}

bool VarSet::is_subset_of(const VarSet& other) const {
  auto b = other.blocks_.begin();
  for (const Block& a : blocks_) {
    while (b != other.blocks_.end() && b->index < a.index) ++b;
    if (b == other.blocks_.end() || b->index != a.index || (a.bits & ~b->bits) != 0) return false;
  }
  return true;
}

bool VarSet::intersects(const VarSet& other) const {
  auto a = blocks_.begin();
  auto b = other.blocks_.begin();
  while (a != blocks_.end() && b != other.blocks_.end()) {
    if (a->index < b->index) {
      ++a;
    } else if (b->index < a->index) {
      ++b;
    } else {
      if ((a->bits & b->bits) != 0) return true;
      ++a;
      ++b;
    }
  }
  return false;
}

std::vector<Var> VarSet::to_vector() const {
  std::vector<Var> out;
  for_each([&](Var x) { out.push_back(x); });
  return out;
}

std::size_t VarSet::hash() const {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (const Block& b : blocks_) {
    h ^= b.bits + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::uint64_t{b.index} * 0xff51afd7ed558ccdULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

std::strong_ordering operator<=>(const VarSet& a, const VarSet& b) {
  if (auto c = a.count() <=> b.count(); c != 0) return c;
  // Same cardinality: compare as binary numbers, most significant block first.
  auto ia = a.blocks_.rbegin();
  auto ib = b.blocks_.rbegin();
  for (; ia != a.blocks_.rend() && ib != b.blocks_.rend(); ++ia, ++ib) {
    if (ia->index != ib->index) return ia->index <=> ib->index;
    if (ia->bits != ib->bits) return ia->bits <=> ib->bits;
  }
  const bool a_done = ia == a.blocks_.rend();
  const bool b_done = ib == b.blocks_.rend();
  if (a_done && b_done) return std::strong_ordering::equal;
  return a_done ? std::strong_ordering::less : std::strong_ordering::greater;
}

}  // namespace sfpa
