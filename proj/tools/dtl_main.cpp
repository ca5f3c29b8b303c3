#include <iostream>

#include "dtl/cli.hpp"

int main(int argc, char** argv) {
  return dtl::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
