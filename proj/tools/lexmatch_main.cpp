#include <iostream>
#include <string>
#include <vector>

#include "lexmatch/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return lexmatch::cli::run(args, std::cout, std::cerr);
}
