#include "sfpa/solver.h"

#include <algorithm>
#include <cassert>
#include <unordered_map>

#include "sfpa/error.h"

namespace sfpa {

MultiparentIndex::MultiparentIndex(const FaultTree& tree) : var_of_(tree.size(), kNone) {
  for (std::uint32_t i = 0; i < tree.size(); ++i) {
    if (tree.parents(NodeId(i)).size() >= 2) {
      var_of_[i] = static_cast<Var>(nodes_.size());
      nodes_.push_back(NodeId(i));
    }
  }
}

std::optional<Var> MultiparentIndex::variable(NodeId v) const {
  Var x = var_of_[v.index()];
  if (x == kNone) return std::nullopt;
  return x;
}

template <typename C>
double SolveReport<C>::clamped() const {
  return std::clamp(CoefficientTraits<C>::to_double(unreliability), 0.0, 1.0);
}

namespace {

template <typename C>
using Poly = SquarefreePoly<C>;

void require_plain_tree(const FaultTree& tree) {
  if (tree.is_pcft()) throw PreconditionError("cannot solve a tree with controllable events");
}

template <typename C>
class Instrumentation {
 public:
  Instrumentation(SolveReport<C>& report, const SolveObserver<C>& observer, std::function<std::size_t(const Poly<C>&)> live)
      : report_(report), observer_(observer), live_(std::move(live)) {}

  void step(NodeId v, const Poly<C>& g) {
    report_.max_terms = std::max(report_.max_terms, g.size());
    report_.max_live_vars = std::max(report_.max_live_vars, live_(g));
    if (observer_.on_step) observer_.on_step(v, g);
  }
  void final(NodeId v, const Poly<C>& g) {
    if (observer_.on_final) observer_.on_final(v, g);
  }

 private:
  SolveReport<C>& report_;
  const SolveObserver<C>& observer_;
  std::function<std::size_t(const Poly<C>&)> live_;
};

template <typename C>
C finish(const FaultTree& tree, const Poly<C>& g_root) {
  // Every formal variable has been substituted at its immediate dominator.
  if (!g_root.is_constant()) {
    throw std::logic_error("internal error: root polynomial of \"" + tree.name(tree.root()) +
                           "\" still has variables: " + g_root.to_string());
  }
  return g_root.constant_term();
}

}  // namespace

template <typename C>
SolveReport<C> solve_sfpa(const FaultTree& tree, const SolveObserver<C>& observer) {
  require_plain_tree(tree);
  const auto start = std::chrono::steady_clock::now();
  SolveReport<C> report;
  const DominatorInfo dom = immediate_dominators(tree);
  const MultiparentIndex multiparent(tree);
  Instrumentation<C> instrument(report, observer, [&](const Poly<C>& g) {
    std::size_t live = 0;
    g.variables().for_each([&](Var x) { live += multiparent.contains(NodeId(x)) ? 1 : 0; });
    return live;
  });

  const Poly<C> one(C(1));
  std::vector<Poly<C>> g(tree.size());
  auto order = dom.topo_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId v = *it;
    Poly<C>& gv = g[v.index()];
    if (tree.kind(v) == GateKind::kBe) {
      gv = Poly<C>(CoefficientTraits<C>::from_rational(tree.exact_probability(v)));
      instrument.step(v, gv);
      instrument.final(v, gv);
      continue;
    }

    const bool is_or = tree.kind(v) == GateKind::kOr;
    gv = one;
    for (NodeId w : tree.children(v)) {
      Poly<C> factor = Poly<C>::variable(w.index());
      gv = gv * (is_or ? one - factor : factor);
      ++report.multiplications;
    }
    if (is_or) gv = one - gv;
    instrument.step(v, gv);

    for (NodeId w : dom.dominated_by(v)) {
      gv = gv.substitute(w.index(), g[w.index()]);
      g[w.index()] = Poly<C>();
      ++report.substitutions;
      instrument.step(v, gv);
    }
    instrument.final(v, gv);
  }

  report.unreliability = finish(tree, g[tree.root().index()]);
  report.wall_time = std::chrono::steady_clock::now() - start;
  return report;
}

template <typename C>
SolveReport<C> solve_sfpa2(const FaultTree& tree, const SolveObserver<C>& observer) {
  require_plain_tree(tree);
  const auto start = std::chrono::steady_clock::now();
  SolveReport<C> report;
  const DominatorInfo dom = immediate_dominators(tree);
  const MultiparentIndex multiparent(tree);
  Instrumentation<C> instrument(report, observer, [](const Poly<C>& g) { return g.variables().count(); });

  // Most g_v are plain numbers. Only the ones that still mention formal
  // variables are kept as polynomials, and only until they are consumed.
  std::vector<C> constant(tree.size(), C(0));
  std::unordered_map<std::uint32_t, Poly<C>> symbolic;
  auto value_of = [&](NodeId w) {
    auto it = symbolic.find(w.index());
    return it != symbolic.end() ? it->second : Poly<C>(constant[w.index()]);
  };
  auto step_at = [&](NodeId v) {
    if (auto it = symbolic.find(v.index()); it != symbolic.end()) {
      instrument.step(v, it->second);
      return;
    }
    report.max_terms = std::max<std::size_t>(report.max_terms, 1);
    if (observer.on_step) observer.on_step(v, Poly<C>(constant[v.index()]));
  };
  auto final_at = [&](NodeId v) {
    if (observer.on_final) observer.on_final(v, value_of(v));
  };

  const Poly<C> one(C(1));
  auto order = dom.topo_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId v = *it;
    if (tree.kind(v) == GateKind::kBe) {
      constant[v.index()] = CoefficientTraits<C>::from_rational(tree.exact_probability(v));
      step_at(v);
      final_at(v);
      continue;
    }

    // Single-parent children are folded in directly (their g_w is final and
    // used nowhere else); multiparent children enter as formal variables.
    const bool is_or = tree.kind(v) == GateKind::kOr;
    C scalar(1);
    Poly<C> product = one;
    bool has_variables = false;
    for (NodeId w : tree.children(v)) {
      ++report.multiplications;
      if (auto x = multiparent.variable(w)) {
        const Poly<C> factor = Poly<C>::variable(*x);
        product = product * (is_or ? one - factor : factor);
        has_variables = true;
      } else if (auto sw = symbolic.find(w.index()); sw != symbolic.end()) {
        product = product * (is_or ? one - sw->second : sw->second);
        symbolic.erase(sw);
        has_variables = true;
      } else {
        scalar *= is_or ? C(1) - constant[w.index()] : constant[w.index()];
      }
    }
    if (has_variables) {
      product *= scalar;
      symbolic.emplace(v.index(), is_or ? one - product : std::move(product));
    } else {
      constant[v.index()] = is_or ? C(1) - scalar : scalar;
    }
    step_at(v);

    for (NodeId w : dom.dominated_by(v)) {
      auto x = multiparent.variable(w);
      if (!x) continue;
      if (auto sv = symbolic.find(v.index()); sv != symbolic.end()) sv->second = sv->second.substitute(*x, value_of(w));
      symbolic.erase(w.index());
      ++report.substitutions;
      step_at(v);
    }
    final_at(v);
    if (auto sv = symbolic.find(v.index()); sv != symbolic.end() && sv->second.is_constant()) {
      constant[v.index()] = sv->second.constant_term();
      symbolic.erase(sv);
    }
  }

  const NodeId root = tree.root();
  report.unreliability = finish(tree, value_of(root));
  report.wall_time = std::chrono::steady_clock::now() - start;
  return report;
}

template <typename C>
C solve_treelike(const FaultTree& tree) {
  require_plain_tree(tree);
  for (std::uint32_t i = 0; i < tree.size(); ++i) {
    if (tree.parents(NodeId(i)).size() >= 2) throw NotATreeError(tree.name(NodeId(i)));
  }
  std::vector<C> g(tree.size());
  auto order = tree.topological_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const NodeId v = *it;
    switch (tree.kind(v)) {
      case GateKind::kBe:
        g[v.index()] = CoefficientTraits<C>::from_rational(tree.exact_probability(v));
        break;
      case GateKind::kAnd: {
        C product(1);
        for (NodeId w : tree.children(v)) product *= g[w.index()];
        g[v.index()] = product;
        break;
      }
      case GateKind::kOr: {
        C survive(1);
        for (NodeId w : tree.children(v)) survive *= C(1) - g[w.index()];
        g[v.index()] = C(1) - survive;
        break;
      }
      case GateKind::kCbe:
        break;
    }
  }
  return g[tree.root().index()];
}

std::size_t variable_budget(const FaultTree& tree, const DominatorInfo& dom) {
  std::vector<std::size_t> live(tree.size(), 0);
  std::vector<std::uint32_t> stamp(tree.size(), 0);
  std::uint32_t round = 0;
  std::vector<NodeId> stack;
  for (std::uint32_t i = 0; i < tree.size(); ++i) {
    const NodeId w(i);
    if (tree.parents(w).size() < 2) continue;
    // Climb from w; every upward path meets idom(w), so stopping there
    // visits exactly the nodes v with w < v <= idom(w).
    const NodeId top = dom.idom(w);
    ++round;
    stack.assign(tree.parents(w).begin(), tree.parents(w).end());
    for (NodeId p : stack) stamp[p.index()] = round;
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      ++live[v.index()];
      if (v == top) continue;
      for (NodeId p : tree.parents(v)) {
        if (stamp[p.index()] != round) {
          stamp[p.index()] = round;
          stack.push_back(p);
        }
      }
    }
  }
  return live.empty() ? 0 : *std::max_element(live.begin(), live.end());
}

std::size_t negative_log10_floor(const Rational& value) {
  if (value <= 0 || value > 1) throw std::domain_error("negative_log10_floor needs 0 < value <= 1");
  const mpz_class& num = value.get_num();
  const mpz_class& den = value.get_den();
  // Smallest k with num * 10^k >= den.
  const std::size_t den_digits = mpz_sizeinbase(den.get_mpz_t(), 10);
  const std::size_t num_digits = mpz_sizeinbase(num.get_mpz_t(), 10);
  std::size_t k = den_digits > num_digits + 1 ? den_digits - num_digits - 1 : 0;
  mpz_class scaled;
  mpz_ui_pow_ui(scaled.get_mpz_t(), 10, k);
  scaled *= num;
  while (scaled < den) {
    scaled *= 10;
    ++k;
  }
  return k;
}

SafetyEvent minimal_cut_set_via_reduction(const FaultTree& tree, std::size_t cap) {
  require_plain_tree(tree);
  const std::size_t n = tree.basic_events().size();
  if (n > cap || n > kReductionCap) throw CapExceededError(n, std::min(cap, kReductionCap));

  std::vector<NodeId> events(tree.basic_events().begin(), tree.basic_events().end());
  std::sort(events.begin(), events.end(), [&](NodeId a, NodeId b) { return tree.name(a) < tree.name(b); });

  FaultTree weighted = tree;
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class power;
    mpz_ui_pow_ui(power.get_mpz_t(), 10, 1UL << i);
    weighted = weighted.with_probability(events[i], Rational(mpz_class(1), power));
  }
  const Rational u = solve_sfpa2<Rational>(weighted).unreliability;
  if (u == 0) throw NoCutSetError();

  const std::size_t kappa = negative_log10_floor(u);
  if (kappa >= (std::size_t{1} << n)) {
    throw std::logic_error("internal error: exponent " + std::to_string(kappa) + " out of range");
  }
  SafetyEvent cut(tree);
  for (std::size_t i = 0; i < n; ++i) cut.set(tree, events[i], ((kappa >> i) & 1) != 0);
  return cut;
}

template struct SolveReport<double>;
template struct SolveReport<Rational>;
template SolveReport<double> solve_sfpa<double>(const FaultTree&, const SolveObserver<double>&);
template SolveReport<Rational> solve_sfpa<Rational>(const FaultTree&, const SolveObserver<Rational>&);
template SolveReport<double> solve_sfpa2<double>(const FaultTree&, const SolveObserver<double>&);
template SolveReport<Rational> solve_sfpa2<Rational>(const FaultTree&, const SolveObserver<Rational>&);
template double solve_treelike<double>(const FaultTree&);
template Rational solve_treelike<Rational>(const FaultTree&);

}  // namespace sfpa
