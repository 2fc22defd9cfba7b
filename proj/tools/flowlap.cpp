#include <iostream>

#include "flowlap/cli.hpp"

int main(int argc, char** argv) { return flowlap::run_cli(argc, argv, std::cout, std::cerr); }
