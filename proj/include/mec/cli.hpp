#pragma once

#include <iosfwd>

namespace mec {

/// Entry point of the `mecsim` command line. Output goes to `out`,
/// diagnostics to `err`; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mec
