#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace padspec::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kNegative = 2, kPrecision = 3 };

/// Runs one job. args[0] is the program name. The JSON result goes to `out`
/// (or to --out), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace padspec::cli
