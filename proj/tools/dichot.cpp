#include "dichot/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return dichot::run_cli(argc, argv, std::cout, std::cerr); }
