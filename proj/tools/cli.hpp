#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qpfix::cli {

/// Exit statuses shared by every verb.
enum ExitStatus : int { ok = 0, property_failed = 1, bad_input = 2 };

/// Runs one command line (args excludes the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qpfix::cli
