#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sfpa/fault_tree.h"

namespace sfpa {

/// How extra parent edges are placed.
enum class Topology {
  /// Any gate that precedes the target in creation order; idom ranges are
  /// unconstrained, so the variable budget grows with the multiparent count.
  kRandom,
  /// Only a sibling gate of the target's parent; each shared node is then
  /// dominated by its grandparent and the variable budget stays at most 2.
  kLocal,
};

struct GenConfig {
  std::uint64_t seed = 1;
  std::size_t n_be = 5;
  std::size_t n_gates = 3;
  std::size_t max_children = 4;
  double p_and = 0.5;
  std::size_t n_multiparent = 0;
  double prob_min = 0.01;
  double prob_max = 0.5;
  Topology topology = Topology::kRandom;
  /// Prepended to every node name ("g<i>" for gates, "b<i>" for BEs).
  std::string name_prefix;
};

/// Name of the pseudo-random generator behind `generate`, recorded in manifests.
inline constexpr const char* kGeneratorAlgorithm = "mt19937_64";

/// Random valid fault tree, deterministic per config.
///
/// A random tree is grown top-down first, then extra parent edges are added
/// until exactly `n_multiparent` nodes have two or more parents (or no
/// further edge fits). Probabilities are drawn uniformly from
/// [prob_min, prob_max] on a 1e-4 grid so that they serialize exactly.
/// Throws InfeasibleConfigError for impossible configurations.
FaultTree generate(const GenConfig& cfg);

struct ManifestRow {
  std::string file;
  std::size_t nodes = 0;
  std::size_t bes = 0;
  std::size_t gates = 0;
  std::size_t multiparent = 0;
  std::size_t c = 0;
  std::uint64_t seed = 0;
};

inline constexpr const char* kManifestHeader = "file,nodes,bes,gates,multiparent,c,seed";

/// Writes one `.dft` file per config plus `manifest.csv` into `out_dir`.
std::vector<ManifestRow> generate_corpus(const std::vector<GenConfig>& grid, const std::filesystem::path& out_dir);

ManifestRow describe(const FaultTree& tree, std::string file, std::uint64_t seed);

void write_manifest(const std::vector<ManifestRow>& rows, const std::filesystem::path& path);
/// Reads a manifest; `#` lines are comments. Throws InputError on bad rows.
std::vector<ManifestRow> read_manifest(const std::filesystem::path& path);

}  // namespace sfpa
