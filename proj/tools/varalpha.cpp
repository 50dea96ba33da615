#include <iostream>

#include "varalpha/cli.hpp"

int main(int argc, char** argv) { return varalpha::cli::run(argc, argv, std::cout, std::cerr); }
