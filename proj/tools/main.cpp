#include <iostream>

#include "hypinv/cli.hpp"

int main(int argc, char** argv) { return hypinv::cli::main(argc, argv, std::cout, std::cerr); }
