#include <unistd.h>

#include <cstdlib>
#include <iostream>

#include "dnav/cli.hpp"

int main(int argc, char** argv) {
    std::ios::sync_with_stdio(false);
    const bool color = std::getenv("DN_NO_COLOR") == nullptr && ::isatty(STDOUT_FILENO);
    return dnav::cli::run(argc, argv, {std::cin, std::cout, std::cerr, color});
}
