#include <iostream>

#include "structobs/cli.hpp"

int main(int argc, char** argv) { return structobs::cli::run(argc, argv, std::cout, std::cerr); }
