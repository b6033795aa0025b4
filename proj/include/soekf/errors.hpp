#pragma once

#include <stdexcept>

namespace soekf {

// Requested closed-form derivatives with c1 != c2; they are only valid for a
// shared spread c.
struct MismatchedSpread : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Innovation covariance not invertible (degenerate prior or zero total noise).
struct SingularInnovation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Prior covariance factorization failed (significantly negative eigenvalue).
struct DegenerateCovariance : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed CSV or key-value config input.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace soekf
