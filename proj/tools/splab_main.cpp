#include <iostream>

#include "splab/cli.hpp"

int main(int argc, char** argv) { return splab::cli::run(argc, argv, std::cout, std::cerr); }
