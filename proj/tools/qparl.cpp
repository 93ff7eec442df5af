#include <iostream>

#include "qparl/cli.hpp"

int main(int argc, char** argv) {
  return qparl::cli::run(argc, argv, std::cout, std::cerr);
}
