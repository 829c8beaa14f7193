#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coinstop::cli {

enum ExitCode : int { kExitOk = 0, kExitUsage = 2, kExitDomain = 3 };

/// Runs the `coinstop` command line. `args` excludes the program name.
/// Reports go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coinstop::cli
