#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace biofilm {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitSolver = 2;
inline constexpr int kExitCheckFailed = 3;

/// Entry point of the command-line tool. `args` excludes the program name.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace biofilm
