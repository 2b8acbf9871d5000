// Exception types shared across the library.
#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace obh {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// (n, z) outside the validated evaluation envelope, or a value that is not
// representable in double precision.
struct DomainError : Error {
  using Error::Error;
};

// Evaluation at a point where the requested function is singular.
struct SingularArgument : Error {
  using Error::Error;
};

// A matrix inversion whose condition estimate exceeds the trust threshold.
struct IllConditioned : Error {
  IllConditioned(const std::string& what, double cond)
      : Error(what), condition(cond) {}
  double condition;
};

// Scattering-coefficient denominator vanished (resonance pole hit).
struct VanishingDenominator : Error {
  using Error::Error;
};

// Adaptive quadrature or a series failed to reach the requested tolerance.
struct NonConvergence : Error {
  NonConvergence(const std::string& what, std::complex<double> best,
                 double bound)
      : Error(what), best_estimate(best), error_bound(bound) {}
  std::complex<double> best_estimate;
  double error_bound;
};

// Configuration file problem; carries the offending field.
struct ConfigError : Error {
  ConfigError(const std::string& what, std::string field_name)
      : Error(what), field(std::move(field_name)) {}
  std::string field;
};

// A physical invariant (rate positivity, state norm) violated beyond
// numerical tolerance.
struct InvariantViolation : Error {
  using Error::Error;
};

}  // namespace obh
