#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pbdcs::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kValidation = 3, kComputation = 4 };

// Runs one CLI invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pbdcs::cli
