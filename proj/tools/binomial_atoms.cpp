#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "binatoms/cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::optional<std::string> env;
  if (const char* v = std::getenv(binatoms::cli::kSieveLimitEnv)) env = v;
  return binatoms::cli::run(args, std::cout, std::cerr, env);
}
