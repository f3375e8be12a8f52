#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qdesign::cli {

/// Exit codes: 0 success, 1 usage or guard error, 2 negative verdict
/// (not admissible, not realizable, not a design, bound violated).
enum ExitCode : int { kOk = 0, kUsage = 1, kVerdict = 2 };

/// Runs one command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qdesign::cli
