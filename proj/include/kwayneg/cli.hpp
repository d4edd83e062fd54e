#pragma once

#include <iosfwd>

namespace kwayneg::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kInputError = 2,
  kInvariantViolated = 3,
};

/// Entry point of the command-line tool. Output is buffered and written to
/// `out` only when the command completes; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kwayneg::cli
