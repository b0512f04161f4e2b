#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cml {

// Full command-line surface; args exclude the program name. Returns the
// process exit code: 0 success, 1 mathematical property violated, 2 usage
// or input error.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace cml
