#include <iostream>

#include "dint/cli.hpp"

int main(int argc, char** argv) {
  return dint::cli::main(argc, argv, std::cout, std::cerr);
}
