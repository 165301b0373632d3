#pragma once

#include <stdexcept>

namespace chebypr {

/// Numerical failure: non-convergence, singular system, diverged iterate.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The evolved graph's spectral-radius estimate exceeds the stored operator
/// bound, so the diffusion coefficients can no longer be shared between the
/// two snapshots. Callers typically fall back to a from-scratch solve.
class LambdaBoundViolation : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace chebypr
