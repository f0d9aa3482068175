#pragma once

#include <string>
#include <vector>

namespace hwlab {

// exit codes of run()
constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;
constexpr int kExitCheckFailed = 4;

/// Execute one CLI invocation (argv without the program name). Reports go to
/// stdout or --out; diagnostics to stderr.
int run(const std::vector<std::string>& args);

} // namespace hwlab
