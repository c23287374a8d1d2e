#include <iostream>

#include "brokenlines/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return brokenlines::run_cli(args, std::cout, std::cerr);
}
