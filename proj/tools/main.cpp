#include <iostream>

#include "polyiso/cli.hpp"

int main(int argc, char** argv) { return polyiso::cli::run(argc, argv, std::cout, std::cerr); }
