#include "sharpfront/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return sharpfront::run_cli(argc, argv, std::cout, std::cerr); }
