#include "sfpa/generator.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "sfpa/dominators.h"
#include "sfpa/error.h"
#include "sfpa/galileo.h"
#include "sfpa/solver.h"

namespace sfpa {

namespace {

// Draws are built directly on the engine output; the standard distributions
// are implementation-defined and would make corpora differ across libraries.
class Random {
 public:
  explicit Random(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

/// Set of indices with O(1) insert, erase and uniform pick.
class IndexPool {
 public:
  explicit IndexPool(std::size_t universe) : position_(universe, kAbsent) {}

  bool contains(std::size_t i) const { return position_[i] != kAbsent; }
  std::size_t size() const { return items_.size(); }
  const std::vector<std::size_t>& items() const { return items_; }

  void insert(std::size_t i) {
    if (contains(i)) return;
    position_[i] = items_.size();
    items_.push_back(i);
  }
  void erase(std::size_t i) {
    if (!contains(i)) return;
    std::size_t last = items_.back();
    items_[position_[i]] = last;
    position_[last] = position_[i];
    items_.pop_back();
    position_[i] = kAbsent;
  }
  std::size_t pick(Random& rng) const { return items_[rng.below(items_.size())]; }

 private:
  static constexpr std::size_t kAbsent = ~std::size_t{0};
  std::vector<std::size_t> items_;
  std::vector<std::size_t> position_;
};

/// Node indices: gates 0..G-1 in creation order (gate 0 is the root), then BEs.
class Skeleton {
 public:
  Skeleton(const GenConfig& cfg, Random& rng)
      : cfg_(cfg), rng_(rng), gates_(cfg.n_gates), children_(cfg.n_gates + cfg.n_be), parents_(cfg.n_gates + cfg.n_be),
        open_(cfg.n_gates) {}

  void grow_tree() {
    if (gates_ == 0) return;
    IndexPool childless(gates_);
    open_.insert(0);
    childless.insert(0);
    for (std::size_t g = 1; g < gates_; ++g) {
      // Keep enough BEs in reserve for every gate that is still childless.
      const bool may_branch = childless.size() + 1 <= cfg_.n_be;
      std::size_t parent = may_branch ? open_.pick(rng_) : childless.pick(rng_);
      childless.erase(parent);
      link(parent, g);
      open_.insert(g);
      childless.insert(g);
    }
    std::vector<std::size_t> leaves_needed = childless.items();
    std::sort(leaves_needed.begin(), leaves_needed.end());
    rng_.shuffle(leaves_needed);
    std::size_t be = gates_;
    for (std::size_t g : leaves_needed) link(g, be++);
    for (; be < gates_ + cfg_.n_be; ++be) link(open_.pick(rng_), be);
  }

  std::size_t add_random_edges(std::size_t wanted) {
    std::vector<std::size_t> targets(children_.size() - 1);
    for (std::size_t i = 0; i < targets.size(); ++i) targets[i] = i + 1;
    rng_.shuffle(targets);
    std::size_t added = 0;
    for (std::size_t w : targets) {
      if (added == wanted) break;
      auto eligible = [&](std::size_t u) { return (w >= gates_ || u < w) && u != parents_[w].front(); };
      std::optional<std::size_t> chosen;
      for (int attempt = 0; attempt < 32 && open_.size() > 0 && !chosen; ++attempt) {
        std::size_t u = open_.pick(rng_);
        if (eligible(u)) chosen = u;
      }
      if (!chosen) {
        std::vector<std::size_t> candidates;
        for (std::size_t u : open_.items()) {
          if (eligible(u)) candidates.push_back(u);
        }
        if (candidates.empty()) continue;
        std::sort(candidates.begin(), candidates.end());
        chosen = candidates[rng_.below(candidates.size())];
      }
      link(*chosen, w);
      ++added;
    }
    return added;
  }

  std::size_t add_local_edges(std::size_t wanted) {
    const std::size_t n = children_.size();
    std::vector<char> pinned(n, 0);           // must keep a single parent
    std::vector<char> shares_child(n, 0);     // already the parent side of one shared node
    std::vector<char> dominates_shared(n, 0); // already the grandparent of one shared node
    std::vector<std::size_t> targets(n - 1);
    for (std::size_t i = 0; i < targets.size(); ++i) targets[i] = i + 1;
    rng_.shuffle(targets);
    std::size_t added = 0;
    for (std::size_t w : targets) {
      if (added == wanted) break;
      if (pinned[w] || parents_[w].size() != 1) continue;
      const std::size_t p = parents_[w].front();
      if (p == 0 || parents_[p].size() != 1 || shares_child[p]) continue;
      const std::size_t a = parents_[p].front();
      if (dominates_shared[a]) continue;
      std::vector<std::size_t> siblings;
      for (std::size_t u : children_[a]) {
        if (u != p && u < gates_ && parents_[u].size() == 1 && !shares_child[u] && open_.contains(u)) {
          siblings.push_back(u);
        }
      }
      if (siblings.empty()) continue;
      const std::size_t u = siblings[rng_.below(siblings.size())];
      link(u, w);
      pinned[p] = pinned[u] = 1;
      shares_child[p] = shares_child[u] = 1;
      dominates_shared[a] = 1;
      ++added;
    }
    return added;
  }

  FaultTree build() {
    FaultTreeBuilder builder;
    std::vector<GateKind> kinds(gates_);
    for (auto& kind : kinds) kind = rng_.unit() < cfg_.p_and ? GateKind::kAnd : GateKind::kOr;
    const long lo = static_cast<long>(std::ceil(cfg_.prob_min * kGrid - 1e-9));
    const long hi = static_cast<long>(std::floor(cfg_.prob_max * kGrid + 1e-9));
    for (std::size_t g = 0; g < gates_; ++g) {
      std::vector<std::string> names;
      for (std::size_t c : children_[g]) names.push_back(name(c));
      builder.add_gate(name(g), kinds[g], std::move(names));
    }
    for (std::size_t b = gates_; b < children_.size(); ++b) {
      const long k = lo + static_cast<long>(rng_.below(static_cast<std::uint64_t>(hi - lo + 1)));
      builder.add_basic_event(name(b), Rational(k, kGrid));
    }
    builder.set_root(name(0));
    return builder.build();
  }

  static constexpr long kGrid = 10000;

 private:
  void link(std::size_t parent, std::size_t child) {
    children_[parent].push_back(child);
    parents_[child].push_back(parent);
    if (children_[parent].size() >= cfg_.max_children) open_.erase(parent);
  }

  std::string name(std::size_t i) const {
    return cfg_.name_prefix + (i < gates_ ? "g" + std::to_string(i) : "b" + std::to_string(i - gates_));
  }

  const GenConfig& cfg_;
  Random& rng_;
  std::size_t gates_;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<std::vector<std::size_t>> parents_;
  IndexPool open_;
};

void check_feasible(const GenConfig& cfg) {
  auto fail = [](const std::string& why) { throw InfeasibleConfigError("infeasible generator config: " + why); };
  if (cfg.n_be == 0) fail("at least one basic event is required");
  if (cfg.max_children < 2) fail("max_children must be at least 2");
  if (!(cfg.p_and >= 0.0 && cfg.p_and <= 1.0)) fail("p_and must lie in [0,1]");
  if (!(cfg.prob_min >= 0.0 && cfg.prob_min <= cfg.prob_max && cfg.prob_max <= 1.0)) {
    fail("probability range must satisfy 0 <= min <= max <= 1");
  }
  if (std::ceil(cfg.prob_min * Skeleton::kGrid - 1e-9) > std::floor(cfg.prob_max * Skeleton::kGrid + 1e-9)) {
    fail("probability range contains no multiple of 1e-4");
  }
  if (cfg.n_gates == 0 && cfg.n_be != 1) fail("without gates the tree is a single basic event");
  const std::size_t nodes = cfg.n_be + cfg.n_gates;
  if (cfg.n_multiparent > nodes - 1) {
    fail("n_multiparent " + std::to_string(cfg.n_multiparent) + " exceeds the " + std::to_string(nodes - 1) +
         " non-root nodes");
  }
  if (cfg.n_gates * cfg.max_children < nodes - 1 + cfg.n_multiparent) {
    fail("not enough child slots for " + std::to_string(nodes - 1 + cfg.n_multiparent) + " edges");
  }
}

}  // namespace

FaultTree generate(const GenConfig& cfg) {
  check_feasible(cfg);
  Random rng(cfg.seed);
  Skeleton skeleton(cfg, rng);
  skeleton.grow_tree();
  if (cfg.n_multiparent > 0) {
    if (cfg.topology == Topology::kLocal) {
      skeleton.add_local_edges(cfg.n_multiparent);
    } else {
      skeleton.add_random_edges(cfg.n_multiparent);
    }
  }
  return skeleton.build();
}

ManifestRow describe(const FaultTree& tree, std::string file, std::uint64_t seed) {
  ManifestRow row;
  row.file = std::move(file);
  row.nodes = tree.size();
  row.bes = tree.basic_events().size();
  row.gates = tree.gate_count();
  row.multiparent = tree.multiparent_count();
  row.c = variable_budget(tree, immediate_dominators(tree));
  row.seed = seed;
  return row;
}

std::vector<ManifestRow> generate_corpus(const std::vector<GenConfig>& grid, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<ManifestRow> rows;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const FaultTree tree = generate(grid[i]);
    char file[32];
    std::snprintf(file, sizeof file, "ft_%04zu.dft", i);
    std::ofstream out(out_dir / file, std::ios::binary);
    out << to_galileo(tree);
    if (!out) throw Error("cannot write " + (out_dir / file).string());
    rows.push_back(describe(tree, file, grid[i].seed));
  }
  write_manifest(rows, out_dir / "manifest.csv");
  return rows;
}

void write_manifest(const std::vector<ManifestRow>& rows, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  out << "# generator: " << kGeneratorAlgorithm << "\n" << kManifestHeader << "\n";
  for (const auto& r : rows) {
    out << r.file << ',' << r.nodes << ',' << r.bes << ',' << r.gates << ',' << r.multiparent << ',' << r.c << ','
        << r.seed << "\n";
  }
  if (!out) throw Error("cannot write " + path.string());
}

std::vector<ManifestRow> read_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::vector<ManifestRow> rows;
  std::string line;
  bool header_seen = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header_seen) {
      if (line != kManifestHeader) throw InputError(path.string() + ": unexpected manifest header \"" + line + "\"");
      header_seen = true;
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 7) throw InputError(path.string() + ":" + std::to_string(line_no) + ": expected 7 fields");
    try {
      ManifestRow r;
      r.file = fields[0];
      r.nodes = std::stoull(fields[1]);
      r.bes = std::stoull(fields[2]);
      r.gates = std::stoull(fields[3]);
      r.multiparent = std::stoull(fields[4]);
      r.c = std::stoull(fields[5]);
      r.seed = std::stoull(fields[6]);
      rows.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw InputError(path.string() + ":" + std::to_string(line_no) + ": malformed number");
    }
  }
  if (!header_seen) throw InputError(path.string() + ": missing manifest header");
  return rows;
}

}  // namespace sfpa
