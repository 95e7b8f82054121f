#include <iostream>

#include "mastereq/repro.hpp"

int main(int argc, char** argv) { return mastereq::repro::run_cli(argc, argv, std::cout, std::cerr); }
