#include <iostream>

#include "pergraph/cli.hpp"

int main(int argc, char** argv) { return pergraph::cli::run(argc, argv, std::cout, std::cerr); }
