#include <iostream>

#include "swarmbo/cli.hpp"

int main(int argc, char** argv) {
  return swarmbo::cli::main(argc, argv, std::cout, std::cerr);
}
