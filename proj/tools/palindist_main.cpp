#include <iostream>
#include <string>
#include <vector>

#include "palindist/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return palindist::cli::run(args, std::cout, std::cerr);
}
