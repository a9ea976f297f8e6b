#include "cis/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return cis::cli::run(argc, argv, std::cout, std::cerr); }
