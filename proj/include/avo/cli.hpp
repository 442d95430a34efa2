#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace avo {

/// Exit codes: 0 definite verdict, 2 Unknown, 1 usage or parse error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace avo
