#include <iostream>

#include "biofilm/cli.hpp"

int main(int argc, char** argv) {
  return biofilm::cli_run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
