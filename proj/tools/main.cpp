#include <string>
#include <vector>

#include "appint/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return appint::cli::run_cli(args);
}
