#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace diffcert::cli {

/// Exit codes: 0 verified, 2 none-in-bounds or inconclusive, 1 error.
enum ExitCode : int { exit_verified = 0, exit_error = 1, exit_bounded = 2 };

/// Runs one diffcert command line (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::vector<std::string> verbs();

}  // namespace diffcert::cli
