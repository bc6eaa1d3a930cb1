#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pegsol::cli {

// Exit codes: 0 success or feasible, 1 verification failure or unsolvable,
// 2 usage error, 3 budget exhausted.
enum Exit { ok = 0, failed = 1, usage = 2, exhausted = 3 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pegsol::cli
