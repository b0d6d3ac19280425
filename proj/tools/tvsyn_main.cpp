#include <iostream>

#include "tvsyn/cli.hpp"

int main(int argc, char** argv) {
  int code = 0;
  const auto config = tvsyn::cli::parse_args(argc, argv, code);
  if (!config) return code;
  return tvsyn::cli::run(*config, std::cerr);
}
