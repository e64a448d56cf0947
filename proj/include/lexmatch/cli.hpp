#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lexmatch::cli {

// Exit codes: 0 success or PASS, 1 FAIL with witness, 2 usage or parse
// error, 3 enumeration-bound refusal.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lexmatch::cli
