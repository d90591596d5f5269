#include <iostream>
#include <string>
#include <vector>

#include "escset/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return escset::dispatch(args, std::cout, std::cerr);
}
