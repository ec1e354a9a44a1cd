#include <iostream>

#include "anomidx/cli.hpp"

int main(int argc, char** argv) { return anomidx::cli::run(argc, argv, std::cout, std::cerr); }
