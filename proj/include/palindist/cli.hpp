#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace palindist::cli {

// Runs one CLI invocation.  args excludes the program name.  The report
// goes to out, diagnostics to err.  Exit codes: 0 success, 1 usage error,
// 2 precondition failure, 3 resource cap exceeded.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace palindist::cli
