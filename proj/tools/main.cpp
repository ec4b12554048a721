#include <iostream>

#include "rgit/cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return rgit::cli::run(args, std::cout, std::cerr);
}
