#pragma once

#include <iosfwd>

namespace lrm::cli {

/// Exit codes of the command-line interface.
enum Exit : int { kOk = 0, kInternal = 1, kInput = 2, kDefect = 3, kBound = 4 };

/// Runs one command line; all output goes to `out` and `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lrm::cli
