#include "levysup/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return levysup::cli_main(argc, argv, std::cout, std::cerr); }
