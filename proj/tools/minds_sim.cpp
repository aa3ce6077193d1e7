#include <iostream>

#include "minds/cli.hpp"

int main(int argc, char** argv) { return minds::cli::run_cli(argc, argv, std::cout, std::cerr); }
