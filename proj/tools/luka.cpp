#include <iostream>

#include "luka/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return luka::cli::dispatch(args, std::cout, std::cerr);
}
