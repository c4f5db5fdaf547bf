#include <iostream>
#include <string>
#include <vector>

#include "qfg/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qfg::run(args, std::cout, std::cerr);
}
