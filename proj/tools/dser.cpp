#include <iostream>

#include "dser/cli.hpp"

int main(int argc, char** argv) { return dser::run_cli(argc, argv, std::cout, std::cerr); }
