#pragma once

#include <ostream>
#include <span>
#include <string>

namespace qecon::cli {

/// Runs one command line (arguments after the program name). Results go to
/// `out` (or the --output file), diagnostics to `err`.
/// Exit codes: 0 success, 1 bad input, 2 no solution / infeasible /
/// unbounded / unsupported, 3 numerical failure.
int dispatch(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace qecon::cli
