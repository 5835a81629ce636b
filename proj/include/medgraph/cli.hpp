#pragma once

#include <iosfwd>

namespace medgraph {

/// Command-line entry point. Returns the process exit code: 0 on success,
/// 1 on parse or validation errors, 2 when a size cap is exceeded, 3 when
/// the input is detected not to be a median graph.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace medgraph
