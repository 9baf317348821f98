#pragma once

#include <ostream>

namespace wmrmr::cli {

// Parses argv and runs one subcommand. Returns 0 on success, 2 on a usage
// error (bad flag, missing file, unknown feature name), 1 on runtime failure.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wmrmr::cli
