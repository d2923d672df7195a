#include <iostream>

#include "mpsd/tools/cli.hpp"

int main(int argc, char** argv) {
  mpsd::cli::RunConfig config;
  if (auto code = mpsd::cli::parse(argc, argv, config, std::cout, std::cerr)) return *code;
  return mpsd::cli::run(config, std::cout, std::cerr);
}
