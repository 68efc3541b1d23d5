#include <iostream>
#include <string>
#include <vector>

#include "tvgp/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tvgp::cli::run(args, std::cout, std::cerr);
}
