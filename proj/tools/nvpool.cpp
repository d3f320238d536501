#include <iostream>
#include <string>
#include <vector>

#include "nvpool/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return nvpool::run_cli(std::move(args), std::cout, std::cerr);
}
