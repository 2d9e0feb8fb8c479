#include <iostream>

#include "sinkhorn_cli.hpp"

int main(int argc, char** argv) { return sinkhorn::cli::run(argc, argv, std::cout, std::cerr); }
