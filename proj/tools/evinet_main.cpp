#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "evinet/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  evinet::cli::Environment env;
  if (const char* cap = std::getenv("EVINET_MAX_PLACES")) env.max_places = cap;
  const std::vector<std::string> args(argv + 1, argv + argc);
  return evinet::cli::main(args, std::cin, std::cout, std::cerr, env);
}
