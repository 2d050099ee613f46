#pragma once

#include "pmm/config.hpp"

namespace pmm {

// Executes one command and writes its artifacts (CSV files plus
// manifest.json) under cfg.out_dir.  Returns 0 on success.  Throws
// ValidationError for bad inputs and NumericalError for stability aborts or
// oracle residual breaches; main maps those to exit codes 1 and 2.
int run(const RunConfig& cfg);

// Exception-to-exit-code wrapper around parse + run, used by the executable.
int run_main(const std::vector<std::string>& args);

} // namespace pmm
