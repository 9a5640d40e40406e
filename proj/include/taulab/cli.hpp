#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace taulab {

// Exit codes: 0 success, 1 invariant violation, 2 usage error,
// 3 resource limit (budget exhausted / cache unusable / tau vanished).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace taulab
