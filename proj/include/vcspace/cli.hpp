#pragma once

#include <iosfwd>

namespace vcspace {

/// Entry point of the `vcspace` command. Returns 0 on success, 1 on a
/// runtime failure (one-line diagnostic on `err`) and 2 on a usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vcspace
