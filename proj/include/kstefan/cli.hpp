#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kstefan::cli {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kVerificationFailed = 1,
    kUsageError = 2,
    kNumericalFailure = 3,
};

/// Environment variable naming a default key=value config file.
inline constexpr const char* kConfigEnvVar = "STEFAN_KUMMER_CONFIG";

/// Runs the command line `args` (args[0] is the program name). Results go to
/// `out` unless --out names a file; error records (one JSON object) go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kstefan::cli
