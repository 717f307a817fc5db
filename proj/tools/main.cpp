#include <iostream>

#include "ncaz/cli.hpp"

int main(int argc, char** argv) { return ncaz::run_cli(argc, argv, std::cout, std::cerr); }
