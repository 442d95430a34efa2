#include <iostream>
#include <string>
#include <vector>

#include "avo/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return avo::run_command(args, std::cout, std::cerr);
}
