#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rdnet::cli {

/// Runs one subcommand (analyze, certify, bootstrap, simulate, version).
/// args excludes the program name. Returns 0 on success, 1 on a domain
/// failure, 2 on usage or parse errors; diagnostics go to `err`.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace rdnet::cli
