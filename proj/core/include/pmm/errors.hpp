#pragma once

#include <stdexcept>
#include <string>

namespace pmm {

// Bad inputs: parameter bounds, malformed config keys, mismatched grids.
// The CLI maps this to exit code 1.
struct ValidationError : std::invalid_argument {
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// Numerical failures at runtime: CFL blowup, state leaving [0,1],
// oracle residual above tolerance.  The CLI maps this to exit code 2.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace pmm
