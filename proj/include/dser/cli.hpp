#pragma once

#include <ostream>

namespace dser {

/// Exit codes: 0 success, 1 verification failure, 2 usage or configuration error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dser
