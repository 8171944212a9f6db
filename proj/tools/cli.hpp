#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace minc::cli {

/// Exit codes: 0 success / sat / true, 1 unsat within the bound / false,
/// 2 usage or input error, 3 budget exceeded.
enum Exit { ok = 0, negative = 1, usage = 2, budget = 3 };

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace minc::cli
