#include <iostream>

#include "psisolve/cli.hpp"

int main(int argc, char** argv) {
  return psisolve::cli::run_cli(argc, argv, std::cin, std::cout, std::cerr);
}
