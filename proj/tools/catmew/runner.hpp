#pragma once

#include <ostream>

#include "config.hpp"

namespace catmew::cli {

/// Executes the configured run and writes the output file. Returns the
/// process exit code: 0 success, 2 validation error, 3 numerical failure,
/// 4 I/O failure. Diagnostics go to `log`; the output file is the only
/// machine-readable product.
int run(const RunConfig& cfg, std::ostream& log);

} // namespace catmew::cli
