#include <iostream>
#include <string>
#include <vector>

#include <gwcalc/cli.hpp>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gwcalc::cli::run(args, std::cout, std::cerr);
}
