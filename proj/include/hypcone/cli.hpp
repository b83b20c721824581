#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hypcone {

/// Runs one command line (without the program name). Writes the RunReport
/// JSON, CSV data or a JSON error object to `out`, usage messages to `err`.
/// Returns 0 on success, 1 on a domain error, 2 on a usage error.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hypcone
