#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace phasetrop::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kParseError = 1;
inline constexpr int kInconclusive = 2;
inline constexpr int kHypothesis = 3;
inline constexpr int kFailure = 4;

/// Runs the command line `args` (without the program name). Results go to `out`
/// unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace phasetrop::cli
