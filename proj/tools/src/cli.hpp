#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace sympack::cli {

enum ExitCode : int { kSuccess = 0, kRejected = 1, kInvalidInput = 2 };

/// Runs one command; `args` excludes the program name.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace sympack::cli
