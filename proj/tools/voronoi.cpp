#include "vgraph/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return vgraph::run_cli(argc, argv, std::cout, std::cerr); }
