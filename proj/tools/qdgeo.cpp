#include <iostream>

#include "qdgeo/cli.hpp"

int main(int argc, char** argv) { return qdgeo::cli::run(argc, argv, std::cout, std::cerr); }
