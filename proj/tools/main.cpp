#include "medgraph/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return medgraph::run(argc, argv, std::cout, std::cerr); }
