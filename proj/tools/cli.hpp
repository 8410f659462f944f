#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace padlock::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

/// Runs one command (`args` excludes the program name). Writes a single
/// JSON report to `out` and diagnostics to `err`; returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace padlock::cli
