#include <string>
#include <vector>

#include "embens/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return embens::run_cli(args);
}
