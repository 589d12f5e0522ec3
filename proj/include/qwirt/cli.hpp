#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qwirt {

/// Runs one `qwirt` command. `args` excludes the program name. Reports go to
/// `out`, error objects to `err`. Returns 0 (pass or value emitted),
/// 1 (verdict fail) or 2 (error).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qwirt
