#include <iostream>

#include "gateimpact/cli.hpp"

int main(int argc, char** argv) {
    return gateimpact::cli::run(argc, argv, std::cout, std::cerr);
}
