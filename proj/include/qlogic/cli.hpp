#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qlogic::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kParseError = 2;

/// Runs one subcommand. `args` excludes the program name. Output is built in
/// full before anything is written to `out`, so a failing run writes only
/// the error message to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qlogic::cli
