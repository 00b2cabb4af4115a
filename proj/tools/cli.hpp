#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hecke::cli {

/// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or parameter
/// error, 3 insufficient precision.
int run(int argc, const char* const* argv);
/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace hecke::cli
