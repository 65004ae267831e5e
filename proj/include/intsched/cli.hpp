// Command-line front end. Reports go to `out` as JSON, diagnostics to `err`.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace intsched::cli {

enum ExitCode : int {
    kOk = 0,
    kParse = 1,     // malformed file, formula or command line
    kShape = 2,     // invalid instance, non-interval input, failed verification
    kParams = 3,    // bad flag values or violated parameter inequalities
    kBudget = 4,    // exact search ran out of nodes or time
    kFault = 5,     // internal invariant fault or LRS3 mismatch
};

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace intsched::cli
