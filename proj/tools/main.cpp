#include <iostream>
#include <string>
#include <vector>

#include "cli/pcstore_cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return pcstore::cli::run(args, std::cout, std::cerr);
}
