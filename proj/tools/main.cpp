#include <clocale>
#include <iostream>
#include <vector>

#include "obhgreen/cli.hpp"

int main(int argc, char** argv) {
  std::setlocale(LC_ALL, "C");
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return obh::cli::run(args, std::cout, std::cerr);
}
