#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fvol {

// exit codes: 0 success, 1 usage/parse, 2 invalid geometry input,
// 3 correctly-rejected cone input, 4 convergence/assertion failure
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace fvol
