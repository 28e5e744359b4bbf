#ifndef ERGM_LAB_CLI_HPP
#define ERGM_LAB_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace ergm::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kNumericGuard = 2 };

/// Runs one command line. Results go to the --output file or `out`;
/// diagnostics go to `err`. argv[0] is the program name.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

/// Worker cap from ERGM_LAB_THREADS (unset: hardware concurrency).
unsigned thread_cap();

}  // namespace ergm::cli

#endif
