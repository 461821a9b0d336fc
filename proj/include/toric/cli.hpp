#pragma once

#include <iosfwd>

namespace toric {

/// Entry point of the toric-mmp command line tool. Exit codes: 0 success,
/// 1 invalid input, 2 internal invariant violation.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace toric
