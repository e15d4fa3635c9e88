#include <iostream>
#include <string>
#include <vector>

#include "qsatake/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qsatake::dispatch(args, std::cout, std::cerr);
}
