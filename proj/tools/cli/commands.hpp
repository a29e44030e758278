#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace krd::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kNotInFiltration = 2, kUnsat = 3 };

/// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace krd::cli
