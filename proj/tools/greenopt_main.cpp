#include <iostream>

#include "greenopt/cli.hpp"

int main(int argc, char** argv) { return greenopt::run_cli(argc, argv, std::cout, std::cerr); }
