// Command-line front end. Exposed as a library function so tests can drive
// subcommands in-process; tools/main.cpp is a thin wrapper.
#pragma once

#include <string>
#include <vector>

namespace leeyang::cli {

/// Dispatches one subcommand. Exit code 0 = PASS, 1 = FAIL (an invariant was
/// violated), 2 = ERROR (bad input / unknown subcommand).
int run(const std::vector<std::string>& args);
int run(int argc, const char* const* argv);

}  // namespace leeyang::cli
