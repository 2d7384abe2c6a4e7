#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace convalg {

// argv-style entry point shared by the `convalg` binary and the in-process
// CLI tests. `args` starts with the program name. Returns the exit code:
//   0  command succeeded (all laws passed / value computed)
//   1  a law suite or counterexample reproduction failed
//   2  bad input: unreadable file, parse error, inconsistent flags
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

} // namespace convalg
