#pragma once

#include <iosfwd>

namespace lmsr::cli {

/// Runs the `lmsr` command line. Returns 0 when a model was produced (or the
/// command succeeded), 2 when a fit produced no model, 1 on usage, parse or
/// configuration errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lmsr::cli
