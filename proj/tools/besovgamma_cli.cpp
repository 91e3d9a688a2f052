#include <iostream>

#include "bg/harness.hpp"

int main(int argc, char** argv) { return bg::run_cli(argc, argv, std::cout, std::cerr); }
