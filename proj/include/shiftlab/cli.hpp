#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace shiftlab {

// args excludes the program name.  Exit codes: 0 success or verified,
// 1 distinguished or failed verification, 2 input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace shiftlab
