#include <iostream>
#include <string>
#include <vector>

#include "convalg/cli.hpp"

int main(int argc, char** argv) {
  return convalg::run_cli(std::vector<std::string>(argv, argv + argc),
                          std::cout, std::cerr);
}
