#include <iostream>

#include "mlext_cli/cli.hpp"

int main(int argc, char** argv) { return mlext::cli::main(argc, argv, std::cout, std::cerr); }
