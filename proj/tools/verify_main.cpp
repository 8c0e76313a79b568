#include <iostream>
#include <string>
#include <vector>

#include "wb/suites.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return wb::run_cli(args, std::cout, std::cerr);
}
