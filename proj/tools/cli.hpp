#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace stmg::cli {

/// Runs `stmg <subcommand> [flags]`; args excludes the program name.
/// Returns the process exit code (0 ok, 2 usage error).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stmg::cli
