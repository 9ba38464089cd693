#pragma once

#include <iosfwd>

namespace shiftwave::tools {

// Exit codes: 0 success, 1 data or computation error, 2 usage error,
// 3 check failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace shiftwave::tools
