#include "erodist/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return erodist::cli::run(argc, argv, std::cout, std::cerr); }
