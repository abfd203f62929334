#include <iostream>
#include <string>
#include <vector>

#include "sis/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sis::run_cli(args, std::cout, std::cerr);
}
