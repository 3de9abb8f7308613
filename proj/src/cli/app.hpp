#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dsatom::cli {

/// Runs the command line `args` (without the program name). Output goes to
/// --out or `out`; diagnostics to `err`. Returns 0, 1 (a row failed) or 2
/// (configuration error).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dsatom::cli
