#pragma once

#include <string>
#include <vector>

namespace grushin {

// Entry point behind the command-line binary, callable in-process by tests.
// Grammar:
//   <solve|mpa|pohozaev|eigen|embed|sweep|check>
//       --config <path> [--out <dir>] [--format csv|json] [--seed <u64>]
// Exit codes: 0 success, 1 configuration error, 2 numerical failure.
int run_cli(const std::vector<std::string>& args);

} // namespace grushin
