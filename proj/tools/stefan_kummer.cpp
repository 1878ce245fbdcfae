#include <iostream>
#include <string>
#include <vector>

#include "kstefan/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return kstefan::cli::run(args, std::cout, std::cerr);
}
