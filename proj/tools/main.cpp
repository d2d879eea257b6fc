#include <iostream>

#include "mldelta/cli.hpp"

int main(int argc, char** argv) {
  return mldelta::cli::run(argc, argv, std::cout, std::cerr);
}
