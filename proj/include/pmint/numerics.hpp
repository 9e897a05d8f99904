#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace pmint {

// Tolerances for adaptive quadrature. The reported error of a converged
// integral is below max(abs_tolerance, rel_tolerance * |result|).
struct QuadratureSpec {
  double abs_tolerance = 1e-10;
  double rel_tolerance = 1e-10;
  int max_subdivisions = 1 << 16;

  void validate() const;  // throws std::invalid_argument on bad settings
};

// Adaptive Gauss-Kronrod (G7,K15) integration of f over the finite interval
// [a, b]. Deterministic for fixed inputs: the subdivision order depends only
// on the computed error estimates. Throws AccuracyError (carrying the best
// estimate) when the tolerance cannot be met within max_subdivisions.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec = {});

std::complex<double> integrate_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    const QuadratureSpec& spec = {});

// Error function. Thin wrapper over the libm implementation, which is a
// vetted rational approximation accurate to a few ulp. Kept as a named entry
// point so quadrature-based probabilities can be cross-checked against it.
double erf(double x);

// In-place radix-2 FFT, size must be a power of two. No normalization is
// applied in either direction:
//   forward:  X_k = sum_j x_j exp(-2 pi i j k / n)
//   inverse:  x_j = sum_k X_k exp(+2 pi i j k / n)
void fft(std::vector<std::complex<double>>& data, bool inverse);

}  // namespace pmint
