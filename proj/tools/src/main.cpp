#include <iostream>

#include "vformation/cli.hpp"

int main(int argc, char** argv) { return vform::cli::run(argc, argv, std::cin, std::cout, std::cerr); }
