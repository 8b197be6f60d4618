#pragma once

#include <stdexcept>
#include <string>

namespace debroglie {

/// Invalid input: out-of-domain parameters, malformed configuration.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical failure: non-converged quadrature, unresolvable or aperiodic
/// curves, failed fits.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Refining the oracle grid moved the result by more than the tolerance.
class ConvergenceError : public NumericError {
 public:
  ConvergenceError(const std::string& what, double coarse, double fine)
      : NumericError(what + " (coarse=" + std::to_string(coarse) +
                     ", refined=" + std::to_string(fine) + ")"),
        coarse_(coarse),
        fine_(fine) {}

  double coarse() const { return coarse_; }
  double fine() const { return fine_; }

 private:
  double coarse_;
  double fine_;
};

/// Curve analysis could not proceed (sampling too coarse, no fringes,
/// undefined visibility, fit not converged).
class AnalysisError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace debroglie
