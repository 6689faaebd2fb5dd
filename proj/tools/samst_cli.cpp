#include <iostream>
#include <string>
#include <vector>

#include "samst/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return samst::cli::run_cli(args, std::cout, std::cerr);
}
