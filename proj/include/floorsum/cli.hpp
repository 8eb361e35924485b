#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace floorsum::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Runs one invocation (args excludes the program name). Records go to `out`,
// diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Published rho values for the reproduction tables.
struct TableRow {
  unsigned long long x;
  double reported;
};
std::vector<TableRow> reference_table(const std::string& which);

}  // namespace floorsum::cli
