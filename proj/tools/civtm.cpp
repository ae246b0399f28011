#include <iostream>
#include <string>
#include <vector>

#include "civtm/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return civtm::run_cli(args, std::cout, std::cerr);
}
