// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sfpa/analysis.h"
#include "sfpa/dominators.h"
#include "sfpa/generator.h"
#include "sfpa/solver.h"
#include "sfpa/squarefree_poly.h"
#include "sfpa/transform.h"
#include "support/support.h"

using namespace sfpa;
using namespace sfpa::testing;

namespace {

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename... Parts>
void require(bool ok, const Parts&... parts) {
  if (ok) return;
  std::ostringstream msg;
  (msg << ... << parts);
  throw Failure(msg.str());
}

std::string show(double x) { return CoefficientTraits<double>::to_string(x); }

// ------------------------------------------------------------------ 1

constexpr double kGoldenTolerance = 1e-12;

std::string golden_values() {
  const FaultTree t1 = plane_crash();
  const double u1[] = {oracle_unreliability<double>(t1), solve_sfpa<double>(t1).unreliability,
                       solve_sfpa2<double>(t1).unreliability};
  for (double u : u1) require(std::abs(u - 0.412) <= kGoldenTolerance, "plane crash U = ", show(u), ", want 0.412");
  require(solve_sfpa2<Rational>(t1).unreliability == q(412, 1000), "plane crash exact U differs from 0.412");

  const FaultTree t2 = shared_or();
  const double u2[] = {oracle_unreliability<double>(t2), solve_sfpa<double>(t2).unreliability,
                       solve_sfpa2<double>(t2).unreliability};
  for (double u : u2) require(std::abs(u - 0.3125) <= kGoldenTolerance, "second tree U = ", show(u), ", want 0.3125");

  // g_f before and after substituting F_b.
  const NodeId f = t2.at("f");
  const NodeId b = t2.at("b");
  const MultiparentIndex mp(t2);
  std::vector<Poly> steps2;
  Poly final2;
  SolveObserver<Rational> obs2;
  obs2.on_step = [&](NodeId v, const Poly& g) {
    if (v == f) steps2.push_back(g);
  };
  obs2.on_final = [&](NodeId v, const Poly& g) {
    if (v == f) final2 = g;
  };
  require(solve_sfpa2<Rational>(t2, obs2).unreliability == q(5, 16), "second tree exact U differs from 0.3125");
  const Poly before2 = Poly(q(1, 4)) + Poly::variable(*mp.variable(b)) * q(3, 4);
  require(!steps2.empty() && steps2.front() == before2, "sfpa2 g_f before substitution is ",
          steps2.empty() ? "missing" : steps2.front().to_string(), ", want 0.25 + 0.75*F_b");
  require(final2 == Poly(q(5, 8)), "sfpa2 final g_f is ", final2.to_string(), ", want 0.625");

  std::vector<Poly> steps1;
  Poly final1;
  SolveObserver<Rational> obs1;
  obs1.on_step = [&](NodeId v, const Poly& g) {
    if (v == f) steps1.push_back(g);
  };
  obs1.on_final = [&](NodeId v, const Poly& g) {
    if (v == f) final1 = g;
  };
  solve_sfpa<Rational>(t2, obs1);
  const Poly before1 = Poly(q(1, 4)) + Poly::variable(b.index()) * q(3, 4);
  require(steps1.size() >= 2 && steps1[steps1.size() - 2] == before1,
          "sfpa g_f before the last substitution differs from 0.25 + 0.75*F_b");
  require(final1 == Poly(q(5, 8)), "sfpa final g_f is ", final1.to_string(), ", want 0.625");
  return "U = 0.412 and 0.3125 via oracle, sfpa, sfpa2; g_f = 0.25 + 0.75*F_b -> 0.625";
}

// ------------------------------------------------------------------ 2

std::string algebra_examples() {
  const Var x = 0, y = 1, z = 2;
  const Poly fx = Poly::variable(x), fy = Poly::variable(y), fz = Poly::variable(z);
  const Poly alpha = Poly(q(2)) + fx + fy;
  const Poly beta = fx + fx * fz * q(3);
  const Poly product = fx * q(3) + fx * fy + fx * fz * q(9) + fx * fy * fz * q(3);
  require(alpha * beta == product, "product is ", (alpha * beta).to_string());

  const Poly substituted = beta.substitute(z, alpha);
  require(substituted == fx * q(10) + fx * fy * q(3), "substitution is ", substituted.to_string());

  // g(00)=3, g(01)=-2, g(10)=7, g(11)=4 written as c_x c_y; bit 0 of the mask is x.
  const BooleanTable<Rational> table{{x, y}, {q(3), q(7), q(-2), q(4)}};
  const Poly interpolated = interpolate(table);
  const Poly expected = Poly(q(3)) + fx * q(4) - fy * q(5) + fx * fy * q(2);
  require(interpolated == expected, "interpolation is ", interpolated.to_string());
  return "(2+x+y)(x+3xz) = " + product.to_string() + "; beta[z->alpha] = " + substituted.to_string() +
         "; <g> = " + interpolated.to_string();
}

// ------------------------------------------------------------------ 3

std::string oracle_equivalence() {
  std::mt19937_64 rng(20240301);
  constexpr std::size_t kInstances = 500;
  constexpr std::size_t kExact = 100;
  std::vector<std::size_t> by_multiparent(9, 0);
  for (std::size_t i = 0; i < kInstances; ++i) {
    const GenConfig cfg = random_config(rng, 12, 8);
    const FaultTree tree = generate(cfg);
    require(tree.basic_events().size() <= 12, "instance ", i, " has too many BEs");
    const std::size_t mp = tree.multiparent_count();
    require(mp <= 8, "instance ", i, " has ", mp, " multiparent nodes");
    ++by_multiparent[mp];
    const double oracle = oracle_unreliability<double>(tree);
    const double a = solve_sfpa<double>(tree).unreliability;
    const double b = solve_sfpa2<double>(tree).unreliability;
    require(std::abs(oracle - a) <= 1e-9 && std::abs(oracle - b) <= 1e-9 && std::abs(a - b) <= 1e-9, "instance ", i,
            " (seed ", cfg.seed, "): oracle ", show(oracle), " sfpa ", show(a), " sfpa2 ", show(b));
    if (i < kExact) {
      const Rational exact = oracle_unreliability<Rational>(tree);
      require(solve_sfpa<Rational>(tree).unreliability == exact, "instance ", i, ": exact sfpa differs from oracle");
      require(solve_sfpa2<Rational>(tree).unreliability == exact, "instance ", i, ": exact sfpa2 differs from oracle");
    }
  }
  std::string histogram;
  for (std::size_t k = 0; k < by_multiparent.size(); ++k) {
    histogram += (k ? " " : "") + std::to_string(k) + ":" + std::to_string(by_multiparent[k]);
  }
  return std::to_string(kInstances) + " trees agree within 1e-9, " + std::to_string(kExact) +
         " exactly; multiparent histogram " + histogram;
}

// ------------------------------------------------------------------ 4

std::string algebra_laws() {
  constexpr std::size_t kCases = 1000;
  std::mt19937_64 rng(7);
  const std::vector<Var> pool{0, 1, 2, 3, 64, 130};
  auto pick_var = [&] { return pool[rng() % pool.size()]; };
  auto without = [&](Var x) {
    std::vector<Var> rest;
    for (Var v : pool) {
      if (v != x) rest.push_back(v);
    }
    return rest;
  };
  std::map<std::string, std::size_t> checked;
  auto law = [&](const std::string& name, bool ok) {
    require(ok, "law \"", name, "\" failed at case ", checked[name]);
    ++checked[name];
  };

  const Poly zero, one(q(1));
  for (std::size_t i = 0; i < kCases; ++i) {
    const Poly a = random_poly(rng, pool), b = random_poly(rng, pool), c = random_poly(rng, pool);
    law("additive associativity", (a + b) + c == a + (b + c));
    law("additive commutativity", a + b == b + a);
    law("additive identity", a + zero == a);
    law("additive inverse", a + (-a) == zero && a - a == zero);
    law("multiplicative associativity", (a * b) * c == a * (b * c));
    law("multiplicative commutativity", a * b == b * a);
    law("multiplicative identity", a * one == a && one * a == a);
    law("distributivity", a * (b + c) == a * b + a * c && (a + b) * c == a * c + b * c);

    VarSet monomial;
    for (Var v : pool) {
      if (rng() % 2) monomial.insert(v);
    }
    const Poly m = Poly::monomial(monomial, q(1));
    const Poly fx = Poly::variable(pick_var());
    law("idempotence", fx * fx == fx && m * m == m);

    const Var x = pick_var();
    const Poly beta = random_poly(rng, without(x));
    const Poly sub = a.substitute(x, beta);
    law("substitution definition", sub == substitute_by_definition(a, x, beta));
    law("substitution split", sub == a.restrict(x, true) * beta + a.restrict(x, false) * (one - beta));

    law("substitution additivity", (a + b).substitute(x, beta) == a.substitute(x, beta) + b.substitute(x, beta));
    const std::vector<Var> others = without(x);
    const std::size_t first = rng() % others.size();
    const std::size_t second = (first + 1 + rng() % (others.size() - 1)) % others.size();
    const Poly idem = random_idempotent(rng, {others[first], others[second]});
    law("idempotent beta is idempotent", idem * idem == idem);
    law("substitution multiplicativity", (a * b).substitute(x, idem) == a.substitute(x, idem) * b.substitute(x, idem));

    Var x1 = pick_var(), x2 = pick_var();
    while (x2 == x1) x2 = pick_var();
    std::vector<Var> free_vars;
    for (Var v : pool) {
      if (v != x1 && v != x2) free_vars.push_back(v);
    }
    const Poly b1 = random_poly(rng, free_vars), b2 = random_poly(rng, free_vars);
    law("substitution exchange", a.substitute(x1, b1).substitute(x2, b2) == a.substitute(x2, b2).substitute(x1, b1));

    std::vector<Var> vars = pool;
    for (std::size_t k = vars.size(); k > 1; --k) std::swap(vars[k - 1], vars[rng() % k]);
    vars.resize(1 + rng() % vars.size());
    BooleanTable<Rational> table{vars, {}};
    for (std::size_t mask = 0; mask < (std::size_t{1} << vars.size()); ++mask) {
      table.values.push_back(q(static_cast<long>(rng() % 21) - 10, 1 + static_cast<long>(rng() % 3)));
    }
    const Poly g = interpolate(table);
    law("interpolation definition", g == interpolate_by_definition(table));
    law("tabulate after interpolate", tabulate(g, vars).values == table.values);
    bool pointwise = true;
    for (std::size_t mask = 0; mask < table.values.size(); ++mask) {
      Assignment point;
      Poly substituted = g;
      for (std::size_t k = 0; k < vars.size(); ++k) {
        const bool bit = (mask >> k) & 1;
        point[vars[k]] = bit;
        substituted = substituted.substitute(vars[k], Poly(q(bit ? 1 : 0)));
      }
      pointwise = pointwise && g.evaluate(point) == table.values[mask] && substituted == Poly(table.values[mask]);
    }
    law("interpolant matches every point", pointwise);
    law("interpolate after tabulate", interpolate(tabulate(a, pool)) == a);
  }
  return std::to_string(checked.size()) + " laws x " + std::to_string(kCases) + " cases, exact";
}

// ------------------------------------------------------------------ 5

std::string deep_check() {
  std::mt19937_64 rng(13);
  constexpr std::size_t kTrees = 50;
  std::size_t nodes_checked = 0;
  std::size_t max_vars = 0;
  for (std::size_t i = 0; i < kTrees; ++i) {
    const GenConfig cfg = random_config(rng, 8, 6);
    const FaultTree tree = generate(cfg);
    std::vector<Poly> final(tree.size());
    SolveObserver<Rational> observer;
    observer.on_final = [&](NodeId v, const Poly& g) { final[v.index()] = g; };
    solve_sfpa<Rational>(tree, observer);

    const DominatorInfo dom = immediate_dominators(tree);
    const auto below = descendant_matrix(tree);
    for (std::uint32_t vi = 0; vi < tree.size(); ++vi) {
      const NodeId v(vi);
      if (!is_gate(tree.kind(v))) continue;
      // I_v: w strictly below v whose immediate dominator is strictly above v.
      std::vector<NodeId> live;
      for (std::uint32_t wi = 0; wi < tree.size(); ++wi) {
        const NodeId w(wi);
        if (w == v || !below[vi][wi]) continue;
        const NodeId top = dom.idom(w);
        if (top != v && below[top.index()][vi]) live.push_back(w);
      }
      const FaultTree sub = subtree(tree, v);
      std::vector<NodeId> controlled;
      for (NodeId w : live) controlled.push_back(sub.at(tree.name(w)));
      const Pcft pcft = restrict_to_controllable(sub, controlled);

      BooleanTable<Rational> table;
      for (NodeId w : live) table.vars.push_back(w.index());
      for (std::size_t mask = 0; mask < (std::size_t{1} << live.size()); ++mask) {
        ControlAssignment control;
        for (NodeId cbe : pcft.controllable_events()) {
          const NodeId original = tree.at(pcft.name(cbe));
          const auto pos = std::find(live.begin(), live.end(), original) - live.begin();
          control[cbe] = ((mask >> pos) & 1) != 0;
        }
        table.values.push_back(pcft_unreliability<Rational>(pcft, control));
      }
      const Poly expected = interpolate(table);
      require(final[vi] == expected, "tree ", i, " (seed ", cfg.seed, ") node ", tree.name(v), ": g = ",
              final[vi].to_string(), ", interpolated PCFT = ", expected.to_string());
      ++nodes_checked;
      max_vars = std::max(max_vars, live.size());
    }
  }
  return std::to_string(nodes_checked) + " gates in " + std::to_string(kTrees) +
         " trees match exactly (up to " + std::to_string(max_vars) + " live variables)";
}

// ------------------------------------------------------------------ 6

std::string dominator_correctness() {
  std::mt19937_64 rng(99);
  constexpr std::size_t kDags = 200;
  std::size_t pairs = 0;
  std::size_t shared = 0;
  for (std::size_t i = 0; i < kDags; ++i) {
    const GenConfig cfg = random_config(rng, 8, 5, 12);
    const FaultTree tree = generate(cfg);
    require(tree.size() <= 12, "dag ", i, " has ", tree.size(), " nodes");
    shared += tree.multiparent_count();
    const DominatorInfo dom = immediate_dominators(tree);
    const auto expected = brute_force_idoms(tree);
    for (const auto& [node, idom] : expected) {
      const std::string got = tree.name(dom.idom(tree.at(node)));
      require(got == idom, "dag ", i, " (seed ", cfg.seed, "): idom(", node, ") = ", got, ", want ", idom);
    }

    // Reachability by DFS, independent of the library.
    const std::size_t n = tree.size();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (std::uint32_t s = 0; s < n; ++s) {
      std::vector<NodeId> stack{NodeId(s)};
      while (!stack.empty()) {
        NodeId u = stack.back();
        stack.pop_back();
        if (reach[s][u.index()]) continue;
        reach[s][u.index()] = true;
        for (NodeId c : tree.children(u)) stack.push_back(c);
      }
    }
    // x precedes-or-equals y iff y reaches x.
    auto preceq = [&](NodeId x, NodeId y) { return static_cast<bool>(reach[y.index()][x.index()]); };
    for (std::uint32_t vi = 0; vi < n; ++vi) {
      const NodeId v(vi);
      if (v == tree.root()) continue;
      for (std::uint32_t wi = 0; wi < n; ++wi) {
        const NodeId w(wi);
        if (w == v || !preceq(v, w)) continue;
        const NodeId iv = dom.idom(v);
        const bool first = preceq(iv, w);
        const bool second = w != tree.root() && preceq(dom.idom(w), iv);
        require(first || second, "dag ", i, ": ordering fails for v=", tree.name(v), " w=", tree.name(w));
        ++pairs;
      }
    }
    require(check_idom_ordering(dom, tree), "dag ", i, ": check_idom_ordering disagrees");
  }
  return std::to_string(kDags) + " DAGs (" + std::to_string(shared) + " shared nodes) match path enumeration; " +
         std::to_string(pairs) + " comparable pairs satisfy the ordering";
}

// ------------------------------------------------------------------ 7

std::string complexity_scaling() {
  const std::size_t sizes[] = {1000, 4000, 16000, 64000};
  constexpr std::size_t kInstances = 5;
  constexpr std::size_t kRepeats = 15;
  constexpr double kMaxRatio = 6.0;
  std::uint64_t seed = 1;
  // corpus[s][i]: instance i at size index s.
  std::vector<std::vector<FaultTree>> corpus(std::size(sizes));
  for (std::size_t s = 0; s < std::size(sizes); ++s) {
    const std::size_t nodes = sizes[s];
    std::size_t attempts = 0;
    while (corpus[s].size() < kInstances) {
      require(++attempts <= 50, "could not generate a corpus with c = 2 at |V| = ", nodes);
      GenConfig cfg;
      cfg.seed = seed++;
      cfg.n_gates = nodes * 2 / 5;
      cfg.n_be = nodes - cfg.n_gates;
      cfg.max_children = 4;
      cfg.n_multiparent = nodes / 25;
      cfg.topology = Topology::kLocal;
      FaultTree tree = generate(cfg);
      const std::size_t c = variable_budget(tree, immediate_dominators(tree));
      const auto report = solve_sfpa2<double>(tree);  // also the untimed warm-up
      require(report.max_live_vars <= c, "|V| = ", nodes, " seed ", cfg.seed, ": max_live_vars ",
              report.max_live_vars, " exceeds c = ", c);
      if (c != 2) continue;
      corpus[s].push_back(std::move(tree));
    }
  }
  // Runs are interleaved across sizes so that drift in machine speed hits every size alike.
  std::vector<std::vector<std::vector<double>>> runs(std::size(sizes), std::vector<std::vector<double>>(kInstances));
  for (std::size_t r = 0; r < kRepeats; ++r) {
    for (std::size_t s = 0; s < std::size(sizes); ++s) {
      for (std::size_t i = 0; i < kInstances; ++i) {
        const auto report = solve_sfpa2<double>(corpus[s][i]);
        runs[s][i].push_back(std::chrono::duration<double, std::milli>(report.wall_time).count());
      }
    }
  }
  std::vector<double> medians;
  std::string detail;
  for (std::size_t s = 0; s < std::size(sizes); ++s) {
    std::vector<double> times;
    for (auto& samples : runs[s]) {
      std::sort(samples.begin(), samples.end());
      times.push_back(samples[kRepeats / 2]);
    }
    std::sort(times.begin(), times.end());
    medians.push_back(times[kInstances / 2]);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%zu:%.2fms", detail.empty() ? "" : " ", sizes[s], medians.back());
    detail += buf;
  }
  for (std::size_t k = 1; k < medians.size(); ++k) {
    const double ratio = medians[k] / medians[k - 1];
    char buf[48];
    std::snprintf(buf, sizeof buf, " x%.2f", ratio);
    detail += buf;
    require(ratio <= kMaxRatio, "time ratio ", ratio, " between |V| = ", sizes[k - 1], " and ", sizes[k],
            " exceeds ", kMaxRatio, " (", detail, ")");
  }
  return "c = 2, median sfpa2 time " + detail;
}

// ------------------------------------------------------------------ 8

std::string np_reduction() {
  std::mt19937_64 rng(8);
  constexpr std::size_t kTrees = 100;
  std::size_t total_failed = 0;
  for (std::size_t i = 0; i < kTrees; ++i) {
    const GenConfig cfg = random_config(rng, 8, 6);
    const FaultTree tree = generate(cfg);
    const SafetyEvent mcs = minimal_cut_set_via_reduction(tree);
    require(structure_function(tree, tree.root(), mcs), "tree ", i, " (seed ", cfg.seed, "): ", mcs.to_string(),
            " is not a cut set");
    for (const SafetyEvent& cut : cut_sets(tree)) {
      require(!(cut.is_below(mcs) && !(cut == mcs)), "tree ", i, " (seed ", cfg.seed, "): ", cut.to_string(),
              " is a strictly smaller cut set than ", mcs.to_string());
    }
    total_failed += mcs.failed_count();
  }
  return std::to_string(kTrees) + " reductions yield minimal cut sets (" + std::to_string(total_failed) +
         " failed BEs in total)";
}

// ------------------------------------------------------------------ 9

std::string treelike_reduction() {
  std::mt19937_64 rng(9);
  constexpr std::size_t kTrees = 100;
  std::size_t largest = 0;
  for (std::size_t i = 0; i < kTrees; ++i) {
    GenConfig cfg = random_config(rng, 60, 0);
    cfg.n_multiparent = 0;
    const FaultTree tree = generate(cfg);
    require(tree.multiparent_count() == 0, "tree ", i, " is not tree-shaped");
    const auto report = solve_sfpa2<double>(tree);
    const double reference = solve_treelike<double>(tree);
    require(report.substitutions == 0, "tree ", i, ": ", report.substitutions, " substitutions");
    require(report.max_live_vars == 0, "tree ", i, ": max_live_vars ", report.max_live_vars);
    require(std::abs(report.unreliability - reference) <= 1e-12, "tree ", i, ": sfpa2 ", show(report.unreliability),
            " vs treelike ", show(reference));
    largest = std::max(largest, tree.size());
  }
  return std::to_string(kTrees) + " trees (up to " + std::to_string(largest) +
         " nodes): no substitutions, no live variables, values within 1e-12";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<std::string()>>> criteria{
      {"golden values", golden_values},
      {"algebra worked examples", algebra_examples},
      {"oracle equivalence", oracle_equivalence},
      {"algebra laws", algebra_laws},
      {"node polynomials equal interpolated PCFT unreliability", deep_check},
      {"dominator correctness", dominator_correctness},
      {"complexity scaling", complexity_scaling},
      {"minimal cut set reduction", np_reduction},
      {"treelike reduction", treelike_reduction},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& [name, check] = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    std::string verdict, detail;
    try {
      detail = check();
      verdict = "PASS";
    } catch (const std::exception& e) {
      detail = e.what();
      verdict = "FAIL";
      ++failures;
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", seconds);
    std::cout << verdict << " criterion " << i + 1 << " (" << name << ") [" << timing << "]: " << detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
