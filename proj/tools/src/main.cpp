#include <iostream>
#include <string>
#include <vector>

#include "mfzero_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return mfzero::cli::run(args, std::cout, std::cerr);
}
