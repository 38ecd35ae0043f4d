#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sfpa::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 1,
  kPreconditionError = 2,
  kInternalError = 3,
};

/// Runs the `sfpa` command line; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sfpa::cli
