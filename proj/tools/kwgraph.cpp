#include <iostream>

#include "kwgraph/cli.hpp"

int main(int argc, char** argv) { return kwgraph::cli::run(argc, argv, std::cout, std::cerr); }
