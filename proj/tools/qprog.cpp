#include <iostream>
#include <string>
#include <vector>

#include "qp/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return qp::run_cli(args, std::cout, std::cerr);
}
