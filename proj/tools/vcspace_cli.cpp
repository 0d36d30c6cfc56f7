#include <iostream>

#include "vcspace/cli.hpp"

int main(int argc, char** argv) { return vcspace::run_cli(argc, argv, std::cout, std::cerr); }
