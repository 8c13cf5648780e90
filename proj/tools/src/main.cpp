#include <iostream>

#include "edgebip_cli/cli.hpp"

int main(int argc, char** argv) { return edgebip::cli::run(argc, argv, std::cout, std::cerr); }
