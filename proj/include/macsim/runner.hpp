#pragma once

#include "macsim/run_config.hpp"

namespace macsim {

/// Executes a validated run configuration: runs the computation, writes
/// `<output>.results.csv`, `<output>.meta.json`, and (for fit requests)
/// `<output>.fits.csv`. Returns the process exit code (0 success,
/// 3 oracle-check failure). Partial outputs are removed on error.
int execute(const RunConfig& config);

}  // namespace macsim
