#pragma once

#include <string>
#include <vector>

namespace tourplanner::cli {

// Entry point behind the binary: exit 0 on success, 1 on domain errors,
// 2 on usage errors. `validate` additionally exits 1 when eta < 1.
int run(const std::vector<std::string>& args);

} // namespace tourplanner::cli
