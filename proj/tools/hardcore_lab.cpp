#include <iostream>

#include "hardcore/harness.hpp"

int main(int argc, char** argv) { return hardcore::main_entry(argc, argv, std::cout, std::cerr); }
