#include "hmfa_cli/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return hmfa::cli::run_cli(argc, argv, std::cout, std::cerr); }
