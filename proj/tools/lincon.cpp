#include <iostream>

#include "lincon/cli.hpp"

int main(int argc, char** argv) {
  return lincon::cli::run(argc, argv, std::cout, std::cerr);
}
