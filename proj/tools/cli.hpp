#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tdlc::cli {

// Runs one command line (without the program name). Returns the process exit
// code: 0 ok, 1 contradiction (infer), 2 input error, 3 resource cap.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tdlc::cli
