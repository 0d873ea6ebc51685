#pragma once

#include <iosfwd>

namespace strata {

/// Entry point shared by the binary and the tests. Returns the process
/// exit code: 0 success, 2 input error, 3 budget or precondition failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace strata
