#include <string>
#include <vector>

#include "bellman2d/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return bellman2d::run_cli(args);
}
