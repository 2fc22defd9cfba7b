#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace flowlap {

/// Command-line front end. Returns 0 on success, 1 on a runtime failure and
/// 2 on invalid arguments; diagnostics go to `err`, the summary to `out`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flowlap
