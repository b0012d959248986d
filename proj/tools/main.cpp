#include <iostream>

#include "pcgym/cli/cli.hpp"

int main(int argc, char** argv) { return pcgym::run_cli(argc, argv, std::cout, std::cerr); }
