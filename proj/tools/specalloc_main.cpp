#include <iostream>
#include <string>
#include <vector>

#include "specalloc/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return specalloc::cli::run(args, std::cout, std::cerr);
}
