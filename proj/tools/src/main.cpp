#include <iostream>
#include <string>
#include <vector>

#include "tempodeg/cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tempodeg::cli::run_cli(args, std::cout, std::cerr);
}
