#include <iostream>
#include <string>
#include <vector>

#include "masm/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return masm::run_cli(args, std::cout, std::cerr);
}
