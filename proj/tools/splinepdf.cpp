#include "splinepdf/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
  return splinepdf::cli::run(argc, argv, std::cout, std::cerr);
}
