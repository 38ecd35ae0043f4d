#pragma once

// Fixtures and independent oracles shared by the unit and acceptance tests.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "sfpa/analysis.h"
#include "sfpa/fault_tree.h"
#include "sfpa/generator.h"
#include "sfpa/squarefree_poly.h"

namespace sfpa::testing {

using Poly = SquarefreePoly<Rational>;
using FPoly = SquarefreePoly<double>;

inline Rational q(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Plane crash: AND over two ORs that share the fuel event.
inline FaultTree plane_crash() {
  return FaultTreeBuilder()
      .add_gate("crash", GateKind::kAnd, {"left", "right"})
      .add_gate("left", GateKind::kOr, {"lrf", "nofuel"})
      .add_gate("right", GateKind::kOr, {"nofuel", "rrf"})
      .add_basic_event("rrf", q(2, 5))
      .add_basic_event("nofuel", q(3, 10))
      .add_basic_event("lrf", q(2, 5))
      .set_root("crash")
      .build();
}

/// h = AND(f, g), f = AND(d, e), d = OR(a, b), e = OR(b, c); all p = 1/2.
inline FaultTree shared_or() {
  return FaultTreeBuilder()
      .add_gate("h", GateKind::kAnd, {"f", "g"})
      .add_gate("f", GateKind::kAnd, {"d", "e"})
      .add_gate("d", GateKind::kOr, {"a", "b"})
      .add_gate("e", GateKind::kOr, {"b", "c"})
      .add_basic_event("a", q(1, 2))
      .add_basic_event("b", q(1, 2))
      .add_basic_event("c", q(1, 2))
      .add_basic_event("g", q(1, 2))
      .set_root("h")
      .build();
}

inline const char* const kPlaneCrashText = R"(toplevel "crash";
"crash" and "left" "right";
"left" or "lrf" "nofuel";
"right" or "nofuel" "rrf";
"lrf" prob=0.4;
"nofuel" prob=0.3;
"rrf" prob=0.4;
)";

inline const char* const kSharedOrText = R"(toplevel h;
h and f g;
f and d e;
d or a b;
e or b c;
a prob=0.5; b prob=0.5; c prob=0.5; g prob=0.5;
)";

/// Random generator config with at most `max_be` BEs and a multiparent
/// target of at most `max_mp`; always feasible.
inline GenConfig random_config(std::mt19937_64& rng, std::size_t max_be, std::size_t max_mp,
                               std::size_t max_nodes = 0) {
  auto pick = [&](std::size_t lo, std::size_t hi) { return lo + rng() % (hi - lo + 1); };
  GenConfig cfg;
  cfg.seed = rng();
  cfg.n_be = pick(1, max_be);
  cfg.n_gates = cfg.n_be == 1 ? pick(0, 2) : pick(1, cfg.n_be + 2);
  if (max_nodes > 0) {
    cfg.n_be = std::min(cfg.n_be, max_nodes - 1);
    cfg.n_gates = std::clamp<std::size_t>(cfg.n_gates, 1, max_nodes - cfg.n_be);
  }
  cfg.max_children = pick(2, 4);
  cfg.p_and = static_cast<double>(pick(0, 10)) / 10.0;
  const std::size_t nodes = cfg.n_be + cfg.n_gates;
  cfg.n_multiparent = std::min(pick(0, max_mp), nodes - 1);
  if (cfg.n_gates > 0) {
    const std::size_t edges = nodes - 1 + cfg.n_multiparent;
    cfg.max_children = std::max(cfg.max_children, (edges + cfg.n_gates - 1) / cfg.n_gates);
  }
  cfg.prob_min = 0.01;
  cfg.prob_max = 0.99;
  return cfg;
}

/// Immediate dominators from the definition: intersect the node sets of all
/// root-to-v paths, then take the strict dominator visited last.
inline std::map<std::string, std::string> brute_force_idoms(const FaultTree& tree) {
  std::map<std::string, std::string> result;
  for (std::uint32_t i = 0; i < tree.size(); ++i) {
    const NodeId target(i);
    if (target == tree.root()) continue;
    std::vector<std::vector<NodeId>> paths;
    std::vector<NodeId> path{tree.root()};
    std::function<void(NodeId)> walk = [&](NodeId v) {
      if (v == target) {
        paths.push_back(path);
        return;
      }
      for (NodeId w : tree.children(v)) {
        path.push_back(w);
        walk(w);
        path.pop_back();
      }
    };
    walk(tree.root());
    std::set<NodeId> common(paths.front().begin(), paths.front().end());
    for (const auto& p : paths) {
      std::set<NodeId> on_path(p.begin(), p.end());
      std::set<NodeId> keep;
      std::set_intersection(common.begin(), common.end(), on_path.begin(), on_path.end(),
                            std::inserter(keep, keep.end()));
      common = std::move(keep);
    }
    common.erase(target);
    NodeId last = tree.root();
    for (NodeId v : paths.front()) {
      if (common.count(v)) last = v;
    }
    result[tree.name(target)] = tree.name(last);
  }
  return result;
}

/// Coefficients straight from the inclusion-exclusion formula:
/// coef(S) = sum over T subset of S of (-1)^{|S \ T|} f(T).
template <typename C>
SquarefreePoly<C> interpolate_by_definition(const BooleanTable<C>& table) {
  const std::size_t n = table.vars.size();
  SquarefreePoly<C> out;
  for (std::size_t s = 0; s < (std::size_t{1} << n); ++s) {
    C coef(0);
    for (std::size_t t = 0; t < (std::size_t{1} << n); ++t) {
      if ((t & ~s) != 0) continue;
      const bool odd = __builtin_popcountll(s & ~t) % 2 == 1;
      coef += odd ? C(-table.values[t]) : table.values[t];
    }
    VarSet vars;
    for (std::size_t i = 0; i < n; ++i) {
      if ((s >> i) & 1) vars.insert(table.vars[i]);
    }
    out += SquarefreePoly<C>::monomial(vars, coef);
  }
  return out;
}

/// Substitution from the coefficient formula: every term alpha_Z' with x in
/// Z' contributes alpha_Z' * beta_Z'' to Z' \ {x} union Z''.
inline Poly substitute_by_definition(const Poly& alpha, Var x, const Poly& beta) {
  Poly out;
  for (const auto& [z, a] : alpha.terms()) {
    if (!z.contains(x)) {
      out += Poly::monomial(z, a);
      continue;
    }
    VarSet rest = z;
    rest.erase(x);
    for (const auto& [z2, b] : beta.terms()) out += Poly::monomial(rest | z2, a * b);
  }
  return out;
}

/// Random polynomial with small rational coefficients over `vars`.
inline Poly random_poly(std::mt19937_64& rng, const std::vector<Var>& vars, std::size_t max_terms = 6) {
  Poly p;
  const std::size_t terms = rng() % (max_terms + 1);
  for (std::size_t t = 0; t < terms; ++t) {
    VarSet z;
    for (Var v : vars) {
      if (rng() % 3 == 0) z.insert(v);
    }
    const long num = static_cast<long>(rng() % 19) - 9;
    const long den = 1 + static_cast<long>(rng() % 4);
    p += Poly::monomial(z, q(num, den));
  }
  return p;
}

/// Random 0/1-valued function interpolated into a polynomial, hence idempotent.
inline Poly random_idempotent(std::mt19937_64& rng, const std::vector<Var>& vars) {
  BooleanTable<Rational> table{vars, {}};
  for (std::size_t m = 0; m < (std::size_t{1} << vars.size()); ++m) table.values.push_back(Rational(rng() % 2));
  return interpolate(table);
}

}  // namespace sfpa::testing
