#pragma once

#include <iosfwd>

namespace spingeom::cli {

enum ExitCode { ok = 0, check_failed = 1, usage_error = 2 };

/// Parses argv, runs one subcommand and writes its report to out; errors
/// go to err. Returns an ExitCode.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace spingeom::cli
