#include <iostream>

#include "mbasynth/cli.hpp"

int main(int argc, char** argv) { return mbasynth::run_cli(argc, argv, std::cout, std::cerr); }
