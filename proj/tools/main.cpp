#include <iostream>

#include "eigbound/cli/commands.hpp"

int main(int argc, char** argv) { return eigbound::cli::run(argc, argv, std::cout, std::cerr); }
