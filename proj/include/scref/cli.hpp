#pragma once

#include <string>
#include <vector>

namespace scref {

// Command line driver. Exit codes: 0 solved / strongly feasible, 1 usage or
// parse error, 2 certificate found / not strongly feasible, 3 numerical
// error, 4 time limit.
int run_cli(const std::vector<std::string>& args);

}  // namespace scref
