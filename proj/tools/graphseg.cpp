#include <iostream>

#include "graphseg/cli.hpp"

int main(int argc, char** argv) { return graphseg::run_cli(argc, argv, std::cout, std::cerr); }
