#include <iostream>
#include <string>
#include <vector>

#include "wildmck/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return wildmck::cli::run(std::move(args), std::cout, std::cerr);
}
