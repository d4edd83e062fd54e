#include <iostream>

#include "kwayneg/cli.hpp"

int main(int argc, char** argv) {
  return kwayneg::cli::run(argc, argv, std::cout, std::cerr);
}
