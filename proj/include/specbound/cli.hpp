// Command-line front end; exposed as a library call so tests can drive the
// subcommands and capture their output.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace specbound::cli {

inline constexpr const char* kVersion = "specbound 0.1.0";

// Dispatches one invocation (args exclude the program name). Returns the
// process exit status: 0 success, 1 solver/validation failure, 2 bad config.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace specbound::cli
