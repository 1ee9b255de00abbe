#pragma once

#include <string>
#include <vector>

namespace pathforest::cli {

/// Front door used by main() and the CLI tests; returns the process exit
/// code (0 ok, 1 domain error, 2 usage error).
int run(const std::vector<std::string>& args);

}  // namespace pathforest::cli
