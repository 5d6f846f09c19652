#ifndef GAPSHIFT_CLI_HPP_
#define GAPSHIFT_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace gapshift {

// The whole command-line front end, separated from main() so tests can
// drive it in-process.  `args` excludes the program name.  Returns the
// process exit code: 0 success, 1 usage or parse failure, 2 certification
// shortfall, 3 internal inconsistency.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace gapshift

#endif  // GAPSHIFT_CLI_HPP_
