#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cosetmac {

// Exit codes: 0 success, 1 validation error, 2 budget exceeded,
// 3 verification failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cosetmac
