#pragma once

#include <iosfwd>

namespace graphseg {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitIo = 3,
  kExitConfig = 4,
};

/// Entry point for `graphseg segment|bench|compare ...`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace graphseg
