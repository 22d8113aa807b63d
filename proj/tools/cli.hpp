#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hardy::cli {

enum ExitCode : int { kSuccess = 0, kVerificationFail = 1, kUsageError = 2, kNumericalFailure = 3 };

/// Entry point of the `hardy` tool. Subcommands: construct, verify-1d, eig,
/// example, compare-kl, green-dump. Every run that gets past argument parsing
/// writes <out-dir>/manifest.json.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hardy::cli
