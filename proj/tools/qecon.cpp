#include <iostream>
#include <string>
#include <vector>

#include "qecon/cli/dispatch.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return qecon::cli::dispatch(args, std::cout, std::cerr);
}
