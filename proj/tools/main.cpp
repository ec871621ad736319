#include <iostream>
#include <vector>

#include "symlie/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return symlie::run_cli(args, std::cout, std::cerr);
}
