#include <iostream>

#include "seek/commands.hpp"

int main(int argc, char** argv) { return seek::run_cli(argc, argv, std::cout, std::cerr); }
