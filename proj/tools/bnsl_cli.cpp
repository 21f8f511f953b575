#include <iostream>

#include "bnsl/cli.hpp"

int main(int argc, char** argv) { return bnsl::run(argc, argv, std::cout, std::cerr); }
