#pragma once

#include <string>
#include <vector>

namespace chromalex {

/// Entry point for the `chromalex` tool; args exclude the program name.
/// Exit codes: 0 success, 1 runtime failure, 2 configuration error,
/// 3 embedding produced nothing usable, 4 word lookup failure,
/// 5 analysis join below the minimum sample threshold.
int run_cli(const std::vector<std::string>& args);

}  // namespace chromalex
