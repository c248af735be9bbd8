#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace ewjn {

/// A physics precondition was violated (z <= 0, omega <= 0, argument on a branch cut, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Invalid user input: malformed config, unknown preset, bad flag combination.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An adaptive integral did not reach its tolerance. Carries the best estimate
/// and its error bound; for real integrands the imaginary parts are zero.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, std::complex<double> best_estimate,
                  std::complex<double> error_bound)
      : std::runtime_error(what), best_estimate_(best_estimate), error_bound_(error_bound) {}

  std::complex<double> best_estimate() const noexcept { return best_estimate_; }
  std::complex<double> error_bound() const noexcept { return error_bound_; }

 private:
  std::complex<double> best_estimate_;
  std::complex<double> error_bound_;
};

}  // namespace ewjn
