#pragma once

#include <string>
#include <vector>

namespace chebstep::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNotConverged = 2;
inline constexpr int kExitUsage = 64;

/// Entry point behind the chebstep binary. Subcommands: solve, compare,
/// gram-analysis, perf-model, moments. Returns a process exit code:
/// 0 success/converged, 1 runtime error, 2 solver did not converge,
/// 64 usage error.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);

}  // namespace chebstep::cli
