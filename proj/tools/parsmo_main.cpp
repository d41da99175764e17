#include <iostream>
#include <string>
#include <vector>

#include "parsmo/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return parsmo::cli::run(args, std::cout, std::cerr);
}
