#include <iostream>
#include <string>
#include <vector>

#include "rankbound/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return rankbound::run_cli(args, std::cout, std::cerr);
}
