#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace linsys::cli {

// Process exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 2;
inline constexpr int kInconclusive = 3;
inline constexpr int kVerificationFailed = 4;

/// Runs one command line (without the program name). Data goes to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace linsys::cli
