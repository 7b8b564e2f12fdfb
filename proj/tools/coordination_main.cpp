#include <iostream>

#include "coordination/cli.hpp"

int main(int argc, char** argv) {
    return coordination::cli::run_cli(argc, argv, std::cout, std::cerr);
}
