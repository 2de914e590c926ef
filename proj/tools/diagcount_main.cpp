#include <iostream>
#include <string>
#include <vector>

#include "diagcount/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    diagcount::CommandResult result = diagcount::run_command(args);
    std::cout << result.output;
    return result.exit_code;
}
