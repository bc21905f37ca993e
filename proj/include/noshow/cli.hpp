#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace noshow::cli {

/// 0: computed (no witness, claim holds); 1: witness found or property
/// violated; 2: any error, including bad command lines.
enum Status : int { ok = 0, witness = 1, failure = 2 };

/// `args` excludes the program name. Reports go to `out`; diagnostics and
/// `--trace` lines go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace noshow::cli
