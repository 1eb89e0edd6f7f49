#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace conegrad::cli {

// Exit codes of the `conegrad` tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitMaxIterations = 2;
inline constexpr int kExitSolverFailure = 3;

/// Entry point of the command-line tool: solve, validate, list, check-cone,
/// batch. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Worker count for `batch` when --parallel is absent: CONEGRAD_THREADS if
/// it is a positive integer, else the hardware concurrency.
unsigned default_thread_count();

}  // namespace conegrad::cli
