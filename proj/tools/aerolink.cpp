#include <iostream>

#include "aerolink/cli.hpp"

int main(int argc, char** argv) { return aerolink::cli_main(argc, argv, std::cout, std::cerr); }
