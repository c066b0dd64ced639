#pragma once

#include <iosfwd>

namespace contest::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerify = 2;
inline constexpr int kExitBudget = 3;

// Runs the contest_opt command line. Data goes to `out` (or the --output file),
// diagnostics and human summaries go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace contest::cli
