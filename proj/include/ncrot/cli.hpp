#pragma once

#include <string>
#include <vector>

#include "ncrot/error.hpp"

namespace ncrot::cli {

/// Exit codes: 0 computed (including negative answers), 1 internal failure,
/// 2 malformed input or usage, 3 a verification ran and failed.
enum ExitCode : int { Ok = 0, Internal = 1, InvalidInput = 2, VerificationFailed = 3 };

int exit_code_for(ErrorKind kind) noexcept;

struct Outcome {
    int exit_code = Ok;
    std::string out;  // stdout payload
    std::string err;  // stderr payload
};

/// Runs one invocation. `args` excludes the program name.
Outcome run(const std::vector<std::string>& args);

/// Runs one batch line (same syntax as a command line, shell-style quoting).
Outcome run_line(const std::string& line, bool json);

/// Process entry point: parses argv, prints, returns the exit code.
int main(int argc, char** argv);

}  // namespace ncrot::cli
