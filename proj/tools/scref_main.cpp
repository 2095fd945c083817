#include <vector>

#include "scref/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return scref::run_cli(args);
}
