#include <iostream>

#include "qtc_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qtc::cli::run_command(args, std::cout, std::cerr);
}
