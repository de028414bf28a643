#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bl::cli {

enum Exit { kOk = 0, kVerifyFailed = 1, kConfigError = 2, kDepthError = 3, kInternalError = 4 };

// Runs one CLI invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bl::cli
