#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hhv::cli {

/// Process exit statuses.
inline constexpr int kExitOk = 0;            // every verdict holds or is inapplicable
inline constexpr int kExitViolated = 1;      // some verdict is violated (classify: fail)
inline constexpr int kExitUsage = 2;         // bad flags or out-of-range values
inline constexpr int kExitInconclusive = 3;  // inconclusive verdict or I/O failure

/// Runs one invocation. `args` excludes the program name. Reports go to
/// `out` unless redirected to files; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "lo:hi:n" -> n points from lo to hi inclusive; a bare number -> one point.
std::vector<double> parse_grid(const std::string& text);

}  // namespace hhv::cli
