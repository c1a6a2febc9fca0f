#include <iostream>

#include "nilalg/cli.hpp"

int main(int argc, char** argv) { return nilalg::run_cli(argc, argv, std::cout, std::cerr); }
