#include <iostream>

#include "edgedom/cli.hpp"

int main(int argc, char** argv) { return edgedom::cli::run(argc, argv, std::cout, std::cerr); }
