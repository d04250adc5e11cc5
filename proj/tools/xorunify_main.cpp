#include <iostream>
#include <string>
#include <vector>

#include "xorunify/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return xorunify::run_cli(args, std::cout, std::cerr);
}
