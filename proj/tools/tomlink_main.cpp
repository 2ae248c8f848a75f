#include <iostream>

#include "tomlink/cli.hpp"

int main(int argc, char** argv) { return tomlink::cli::run(argc, argv, std::cout, std::cerr); }
