#include <iostream>

#include "mbrank/cli.hpp"

int main(int argc, char** argv) { return mbrank::run_cli(argc, argv, std::cout, std::cerr); }
