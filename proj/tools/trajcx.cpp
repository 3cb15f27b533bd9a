#include <iostream>
#include <string>
#include <vector>

#include "trajcx/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return trajcx::run_cli(args, std::cout, std::cerr);
}
