#ifndef RENDEZKIT_CLI_HPP
#define RENDEZKIT_CLI_HPP

#include <iosfwd>

namespace rendezkit {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitProperty = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitBudget = 4;

/// The `rendezkit` command line. Results go to `out` (or --output), the
/// human summary and diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rendezkit

#endif  // RENDEZKIT_CLI_HPP
