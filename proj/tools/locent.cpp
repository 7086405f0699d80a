#include <iostream>

#include "locent/cli/commands.hpp"

int main(int argc, char** argv) { return locent::cli::run_cli(argc, argv, std::cout, std::cerr); }
