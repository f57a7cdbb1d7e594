#include <iostream>
#include <string>
#include <vector>

#include "nieval/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return nieval::run_cli(args, std::cout, std::cerr);
}
