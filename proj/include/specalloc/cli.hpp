#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace specalloc::cli {

/// Exit statuses of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDegenerate = 3;
inline constexpr int kExitSolver = 4;

/// Runs the tool on argv (argv[0] is the program name). Results go to `out`
/// or the --output file; diagnostics only ever go to `err`.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace specalloc::cli
