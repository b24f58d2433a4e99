#ifndef POPUC_CLI_HPP
#define POPUC_CLI_HPP

#include <ostream>

namespace popuc {

/// Exit codes: 0 success, 1 property violation, 2 usage or input error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace popuc

#endif  // POPUC_CLI_HPP
