#include <iostream>

#include "nuderiv/cli.hpp"

int main(int argc, char** argv) { return nuderiv::cli::run(argc, argv, std::cout, std::cerr); }
