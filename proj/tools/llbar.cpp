#include <iostream>

#include "llbar/cli.hpp"

int main(int argc, char** argv) { return llbar::cli::run(argc, argv, std::cout, std::cerr); }
