#include <iostream>

#include "pbdcs/cli.hpp"

int main(int argc, char** argv) {
  return pbdcs::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
