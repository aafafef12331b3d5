#include <iostream>
#include <string>
#include <vector>

#include "batcoupler/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return batcoupler::cli::run_cli(args, std::cout, std::cerr);
}
