#include "labelforge_cli/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return labelforge::cli::run(argc, argv, std::cout, std::cerr); }
