#include <iostream>

#include "polylog/cli.hpp"

int main(int argc, char** argv) { return polylog::run_cli(argc, argv, std::cout, std::cerr); }
