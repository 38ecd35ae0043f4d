#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sfpa/coefficient.h"
#include "sfpa/error.h"
#include "sfpa/var_set.h"

namespace sfpa {

/// 0/1 values for some variables.
using Assignment = std::map<Var, bool>;

/// Element of the squarefree polynomial algebra A(X): a linear combination of
/// monomials prod_{x in Y} F_x over subsets Y, multiplied under F_x^2 = F_x.
///
/// Terms are a sparse map VarSet -> coefficient holding no zero coefficient,
/// so structural equality is mathematical equality. The variable universe is
/// implicit; any polynomial over X is also one over a superset of X.
template <typename C>
class SquarefreePoly {
 public:
  using Terms = std::unordered_map<VarSet, C, VarSetHash>;

  SquarefreePoly() = default;
  explicit SquarefreePoly(const C& constant) { add_term(VarSet{}, constant); }

  static SquarefreePoly variable(Var x) { return monomial(VarSet::of({x}), C(1)); }
  static SquarefreePoly monomial(const VarSet& vars, const C& coefficient) {
    SquarefreePoly p;
    p.add_term(vars, coefficient);
    return p;
  }

  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

  C coefficient(const VarSet& vars) const {
    auto it = terms_.find(vars);
    return it == terms_.end() ? C(0) : it->second;
  }
  C constant_term() const { return coefficient(VarSet{}); }

  /// Union of all monomials.
  VarSet variables() const {
    VarSet out;
    for (const auto& [vars, c] : terms_) out = out | vars;
    return out;
  }
  bool contains(Var x) const {
    return std::any_of(terms_.begin(), terms_.end(), [x](const auto& t) { return t.first.contains(x); });
  }

  SquarefreePoly& operator+=(const SquarefreePoly& other) {
    for (const auto& [vars, c] : other.terms_) add_term(vars, c);
    return *this;
  }
  SquarefreePoly& operator-=(const SquarefreePoly& other) {
    for (const auto& [vars, c] : other.terms_) add_term(vars, -c);
    return *this;
  }
  SquarefreePoly& operator*=(const C& scalar) {
    if (scalar == C(0)) {
      terms_.clear();
      return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
      it->second *= scalar;
      // Float underflow can turn a product into an exact zero.
      it = it->second == C(0) ? terms_.erase(it) : std::next(it);
    }
    return *this;
  }

  friend SquarefreePoly operator+(SquarefreePoly a, const SquarefreePoly& b) { return a += b; }
  friend SquarefreePoly operator-(SquarefreePoly a, const SquarefreePoly& b) { return a -= b; }
  friend SquarefreePoly operator-(SquarefreePoly a) { return a *= C(-1); }
  friend SquarefreePoly operator*(SquarefreePoly a, const C& scalar) { return a *= scalar; }

  /// Product with monomials combined by set union (the law F_x^2 = F_x).
  friend SquarefreePoly operator*(const SquarefreePoly& a, const SquarefreePoly& b) {
    if (a.is_constant()) return b * a.constant_term();
    if (b.is_constant()) return a * b.constant_term();
    SquarefreePoly out;
    out.terms_.reserve(std::min(a.size() * b.size(), std::size_t{1} << 16));
    for (const auto& [va, ca] : a.terms_) {
      for (const auto& [vb, cb] : b.terms_) out.add_term(va | vb, ca * cb);
    }
    return out;
  }
  SquarefreePoly& operator*=(const SquarefreePoly& other) { return *this = *this * other; }

  /// a[F_x -> bit]: bit 0 drops every term containing x; bit 1 folds each such
  /// term onto its x-free monomial.
  SquarefreePoly restrict(Var x, bool bit) const {
    SquarefreePoly out;
    for (const auto& [vars, c] : terms_) {
      if (!vars.contains(x)) {
        out.add_term(vars, c);
      } else if (bit) {
        VarSet rest = vars;
        rest.erase(x);
        out.add_term(rest, c);
      }
    }
    return out;
  }

  /// a[F_x -> b], computed as a[F_x -> 1] * b + a[F_x -> 0] * (1 - b),
  /// rearranged to a single product. Requires x not to occur in b.
  SquarefreePoly substitute(Var x, const SquarefreePoly& replacement) const {
    if (replacement.contains(x)) {
      throw AlgebraError("cannot substitute F_" + std::to_string(x) + " by a polynomial containing it");
    }
    if (!contains(x)) return *this;
    SquarefreePoly when_false = restrict(x, false);
    SquarefreePoly difference = restrict(x, true) - when_false;
    return difference * replacement + when_false;
  }

  /// Value at a 0/1 point; every variable of the polynomial must be assigned.
  C evaluate(const Assignment& point) const {
    C total(0);
    for (const auto& [vars, c] : terms_) {
      bool all_one = true;
      vars.for_each([&](Var x) {
        auto it = point.find(x);
        if (it == point.end()) throw AlgebraError("no value for variable " + std::to_string(x));
        all_one = all_one && it->second;
      });
      if (all_one) total += c;
    }
    return total;
  }

  /// Terms ordered by (size, bitset value), e.g. `0.25 + 0.75*b`.
  std::string to_string(const std::function<std::string(Var)>& name = default_name) const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<VarSet, C>> sorted(terms_.begin(), terms_.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::string out;
    for (const auto& [vars, c] : sorted) {
      const bool negative = c < C(0);
      const C magnitude = negative ? C(-c) : c;
      if (out.empty()) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      std::string monomial;
      vars.for_each([&](Var x) { monomial += (monomial.empty() ? "" : "*") + name(x); });
      if (monomial.empty()) {
        out += CoefficientTraits<C>::to_string(magnitude);
      } else if (magnitude == C(1)) {
        out += monomial;
      } else {
        out += CoefficientTraits<C>::to_string(magnitude) + "*" + monomial;
      }
    }
    return out;
  }

  static std::string default_name(Var x) { return "x" + std::to_string(x); }

  friend bool operator==(const SquarefreePoly& a, const SquarefreePoly& b) { return a.terms_ == b.terms_; }

 private:
  void add_term(const VarSet& vars, const C& c) {
    if (c == C(0)) return;
    auto [it, inserted] = terms_.try_emplace(vars, c);
    if (!inserted) {
      it->second += c;
      if (it->second == C(0)) terms_.erase(it);
    }
  }

  Terms terms_;
};

inline constexpr std::size_t kMaxTableVariables = 20;

/// A real-valued Boolean function over `vars`; `values[mask]` is the value at
/// the point where vars[i] = bit i of mask.
template <typename C>
struct BooleanTable {
  std::vector<Var> vars;
  std::vector<C> values;
};

namespace detail {

inline void check_table_vars(const std::vector<Var>& vars) {
  if (vars.size() > kMaxTableVariables) {
    throw AlgebraError("tables are limited to " + std::to_string(kMaxTableVariables) + " variables");
  }
  std::vector<Var> sorted = vars;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw AlgebraError("table lists a variable twice");
  }
}

inline void check_table_shape(const std::vector<Var>& vars, std::size_t value_count) {
  check_table_vars(vars);
  if (value_count != (std::size_t{1} << vars.size())) {
    throw AlgebraError("incomplete table: expected " + std::to_string(std::size_t{1} << vars.size()) +
                       " values, got " + std::to_string(value_count));
  }
}

}  // namespace detail

/// The unique polynomial agreeing with `table` on every 0/1 point.
///
/// The evaluation matrix is lower triangular in subset order; it factors
/// into one 2x2 block per variable, so forward substitution is done one
/// variable at a time in O(n 2^n).
template <typename C>
SquarefreePoly<C> interpolate(const BooleanTable<C>& table) {
  detail::check_table_shape(table.vars, table.values.size());
  std::vector<C> coefficients = table.values;
  const std::size_t n = table.vars.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t mask = 0; mask < coefficients.size(); ++mask) {
      if (mask & bit) coefficients[mask] -= coefficients[mask ^ bit];
    }
  }
  SquarefreePoly<C> out;
  for (std::size_t mask = 0; mask < coefficients.size(); ++mask) {
    if (coefficients[mask] == C(0)) continue;
    VarSet vars;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) vars.insert(table.vars[i]);
    }
    out += SquarefreePoly<C>::monomial(vars, coefficients[mask]);
  }
  return out;
}

/// Values of `poly` at every 0/1 point over `vars` (which must cover its variables).
template <typename C>
BooleanTable<C> tabulate(const SquarefreePoly<C>& poly, const std::vector<Var>& vars) {
  detail::check_table_vars(vars);
  std::map<Var, std::size_t> position;
  for (std::size_t i = 0; i < vars.size(); ++i) position[vars[i]] = i;
  BooleanTable<C> table{vars, std::vector<C>(std::size_t{1} << vars.size(), C(0))};
  for (const auto& [monomial, c] : poly.terms()) {
    std::size_t mask = 0;
    monomial.for_each([&](Var x) {
      auto it = position.find(x);
      if (it == position.end()) throw AlgebraError("variable " + std::to_string(x) + " missing from table");
      mask |= std::size_t{1} << it->second;
    });
    table.values[mask] += c;
  }
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const std::size_t bit = std::size_t{1} << i;
    for (std::size_t mask = 0; mask < table.values.size(); ++mask) {
      if (mask & bit) table.values[mask] += table.values[mask ^ bit];
    }
  }
  return table;
}

extern template class SquarefreePoly<double>;
extern template class SquarefreePoly<Rational>;

}  // namespace sfpa
