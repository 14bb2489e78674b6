#ifndef STALLINGS_CLI_HPP
#define STALLINGS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace stallings {

/// Runs the command-line front end. Exit codes: 0 success, 1 parse or
/// validation error, 2 theorem-hypothesis refusal.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace stallings

#endif
