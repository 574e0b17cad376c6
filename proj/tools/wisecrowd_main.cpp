#include <iostream>

#include "wisecrowd/cli.hpp"

int main(int argc, char** argv) { return wisecrowd::cli::main_entry(argc, argv, std::cout, std::cerr); }
