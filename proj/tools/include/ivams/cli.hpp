#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ivams::cli {

enum ExitCode : int { ok = 0, usage = 1, data_error = 2, numerical = 3 };

/// Runs one command line (args excludes the program name). Tables and data
/// go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ivams::cli
