#pragma once

#include <string>
#include <vector>

namespace qwalk::cli {

// Batch experiment runner. args are the command-line tokens after the program
// name. Returns 0 on success, 1 when --assert finds a threshold violation,
// 2 on usage errors.
int run(const std::vector<std::string>& args);

}  // namespace qwalk::cli
