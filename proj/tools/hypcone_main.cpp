#include <iostream>
#include <string>
#include <vector>

#include "hypcone/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hypcone::dispatch(args, std::cout, std::cerr);
}
