#pragma once

#include <stdexcept>
#include <string>

namespace helscat {

// Error taxonomy; the CLI maps these onto exit codes:
//   config_error    -> 2  (bad configuration / parameter validation)
//   data_error      -> 3  (missing or inconsistent data files, cache mismatch)
//   numerical_error -> 4  (non-convergent quadrature, domain failures, null state)
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// First-order expansion of the splitting coefficients is singular when either
// coefficient (or their quadrature sum) vanishes at the pulse center; callers
// may catch this specifically and fall back to the exact quadrature.
struct degenerate_expansion_error : numerical_error {
    using numerical_error::numerical_error;
};

} // namespace helscat
