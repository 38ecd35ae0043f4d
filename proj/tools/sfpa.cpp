#include <iostream>
#include <string>
#include <vector>

#include "sfpa/cli.h"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sfpa::cli::run(args, std::cout, std::cerr);
}
