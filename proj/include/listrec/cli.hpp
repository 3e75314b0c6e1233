#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace listrec::cli {

enum ExitCode : int { kOk = 0, kViolation = 1, kInvalidInput = 2, kBudgetExceeded = 3 };

/// Runs one command. `args` excludes the program name. Reports go to `out`
/// (or --output), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace listrec::cli
