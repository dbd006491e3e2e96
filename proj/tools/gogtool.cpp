#include <iostream>

#include "gog/cli.hpp"

int main(int argc, char** argv) { return gog::run_cli(argc, argv, std::cout, std::cerr); }
