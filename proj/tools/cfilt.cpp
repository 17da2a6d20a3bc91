#include "cfilt/commands.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return cfilt::run_cli(argc, argv, std::cout, std::cerr);
}
