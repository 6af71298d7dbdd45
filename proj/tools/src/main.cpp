#include <iostream>

#include "xfem_tools/cli.hpp"

int main(int argc, char** argv) {
  return xfem::cli::cli_main(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
