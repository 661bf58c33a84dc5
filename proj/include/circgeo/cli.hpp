#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace circgeo {

/// Runs the command line `circgeo eval|verify|scan ...`; args excludes the
/// program name. Returns the process exit code: 0 all checks passed, 1 at
/// least one failed, 2 configuration or I/O error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace circgeo
