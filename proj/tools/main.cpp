#include <iostream>

#include "debroglie/cli.hpp"

int main(int argc, char** argv) {
  return debroglie::cli::run(argc, argv, std::cout, std::cerr);
}
