#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace pmint {

// Adaptive quadrature could not reach the requested tolerance within the
// subdivision budget. Carries the best estimate obtained so far.
class AccuracyError : public std::runtime_error {
 public:
  AccuracyError(const std::string& what, std::complex<double> best, double err)
      : std::runtime_error(what), best_estimate(best), error_bound(err) {}

  std::complex<double> best_estimate;
  double error_bound;
};

// A sampled grid cannot represent the requested result: spectrum reaches the
// band edge, or the evolved state does not fit into the grid box.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The full-axis integral of the wavefunction vanishes where a finite value
// is required (cross-section denominator).
class DegenerateStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A closed-form approximation was evaluated outside its domain of validity.
class ApproximationDomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The probability-ratio bound was requested where the joint-probability
// denominator is not positive, i.e. outside the violation regime.
class NoViolationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pmint
