#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace eepn {

/// Runs the command line front end. `args` excludes the program name. CSV
/// goes to `out`; the summary, progress and error lines go to `err`.
/// Returns the process exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace eepn
