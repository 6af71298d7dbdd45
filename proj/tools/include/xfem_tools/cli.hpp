#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace xfem::cli {

/// Runs one subcommand. args excludes the program name. Returns 0 on
/// success, 1 on validation errors, 2 on solver failures.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace xfem::cli
