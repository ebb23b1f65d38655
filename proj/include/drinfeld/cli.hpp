#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace drinfeld {

// The CLI entry point, callable in-process for tests. stdout records go to
// `out`, diagnostics to `err`. Exit codes: 0 success, 2 usage error,
// 3 precision/stabilization failure, 1 anything else.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace drinfeld
