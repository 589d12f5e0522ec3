#include <iostream>

#include "qwirt/cli.hpp"

int main(int argc, char** argv) {
    return qwirt::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
