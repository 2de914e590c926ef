#pragma once

// The command surface behind the diagcount binary. Kept as a library entry
// point so the tests can drive every subcommand in-process.

#include <string>
#include <vector>

namespace diagcount {

struct CommandResult {
    int exit_code = 0;   // 0 success, 1 verification failure, 2 usage error
    std::string output;  // rendered document, newline-terminated
};

CommandResult run_command(const std::vector<std::string>& args);

}  // namespace diagcount
