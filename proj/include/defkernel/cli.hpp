#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace defkernel {

// The defkernel command-line surface; main() is a thin wrapper so tests can
// drive it in-process. Exit codes: 0 well-defined, 3 borderline (undecided
// atoms present), 1 operational error.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

} // namespace defkernel
