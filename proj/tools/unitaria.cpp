#include <iostream>
#include <string>
#include <vector>

#include "unitaria/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return unitaria::dispatch(std::move(args), std::cout, std::cerr);
}
