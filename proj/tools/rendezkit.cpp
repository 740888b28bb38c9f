#include <iostream>

#include "rendezkit/cli.hpp"

int main(int argc, char** argv) { return rendezkit::run_cli(argc, argv, std::cout, std::cerr); }
