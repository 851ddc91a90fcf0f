#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace afmet {

/// Entry point of the command-line tool, separated from main() so tests can
/// drive it with argument vectors and capture the streams.
///
/// Exit codes: 0 success, 1 failed verification claim, 2 configuration error,
/// 3 solver or oracle failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace afmet
