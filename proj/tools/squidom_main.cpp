#include <iostream>

#include "squidom/cli.hpp"

int main(int argc, char** argv) { return squidom::run_cli(argc, argv, std::cout, std::cerr); }
