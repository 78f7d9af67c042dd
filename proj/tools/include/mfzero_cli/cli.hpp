#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mfzero::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitRuntime = 1,      // unexpected failure (I/O, numerics)
  kExitUsage = 2,        // bad arguments or unreadable input file
  kExitGeneration = 3,   // builtin coefficient generation failed
  kExitIncomplete = 4,   // zero list incomplete
  kExitResidual = 5,     // explicit-formula residual above budget
  kExitEquidist = 6,     // equidistribution trend check failed
};

/// Runs one command line (args excludes the program name).  Files go to
/// --out or `out`; machine-readable summaries to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mfzero::cli
