#ifndef MWCUT_CLI_HPP_
#define MWCUT_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace mwcut {

/// Runs the command-line front end. Exit codes: 0 success, 1 validation
/// error, 2 solver failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mwcut

#endif  // MWCUT_CLI_HPP_
