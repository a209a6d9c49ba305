#include <iostream>

#include "clines/cli.hpp"

int main(int argc, char** argv) { return clines::run_cli(argc, argv, std::cout, std::cerr); }
