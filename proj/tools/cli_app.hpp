#pragma once

#include <iosfwd>

namespace parspec::cli {

// Exit codes: 0 success, 1 unexpected failure, 2 usage or config error,
// 3 a module reported a contract violation. Errors go to `err` as one JSON line.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace parspec::cli
