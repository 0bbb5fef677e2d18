#include <iostream>
#include <string>
#include <vector>

#include "dcenter/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dcenter::cli::run(args, std::cout, std::cerr);
}
