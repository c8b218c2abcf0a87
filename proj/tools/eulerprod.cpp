#include <iostream>

#include "eulerprod/cli.hpp"

int main(int argc, char** argv) { return eulerprod::cli::dispatch(argc, argv, std::cout, std::cerr); }
