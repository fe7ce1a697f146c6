#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace graphpse::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitVerificationFailure = 2;

/// Parses and runs one command line. Primary output goes to `--out` when
/// given (with `<out>.config.json` and, for some commands, `<out>.meta.json`
/// beside it), otherwise to `out`. Diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace graphpse::cli
