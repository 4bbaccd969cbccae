#pragma once

#include <iosfwd>

namespace bhc::cli {

/// Runs one CLI invocation. Results go to `out`, diagnostics to `err`;
/// returns the process exit code (0 iff no error).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bhc::cli
