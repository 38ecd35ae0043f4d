#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "sfpa/fault_tree.h"

namespace sfpa {

/// Parses the Galileo-style static fault tree format:
///
///     toplevel "planecrash";
///     "planecrash" and "left" "right";
///     "left" or "lrf" "nofuel";
///     "lrf" prob=0.4;
///
/// Names may be quoted or bare identifiers; `//` starts a comment and
/// declarations may appear in any order. Throws ParseError for syntax errors
/// and ValidationError for structural ones.
FaultTree parse_ft(std::string_view text);

FaultTree read_ft(const std::filesystem::path& path);

/// Deterministic serialization: toplevel, then gates in topological order,
/// then BEs sorted by name. Probabilities are written exactly when they have
/// a terminating decimal expansion. CBEs cannot be written.
std::string to_galileo(const FaultTree& tree);

}  // namespace sfpa
