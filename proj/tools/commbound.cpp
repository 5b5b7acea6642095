#include <iostream>
#include <string>
#include <vector>

#include "commbound/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return commbound::cli::main(args, std::cout, std::cerr);
}
