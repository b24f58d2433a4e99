#include <iostream>

#include "popuc/cli.hpp"

int main(int argc, char** argv) { return popuc::run_cli(argc, argv, std::cout, std::cerr); }
