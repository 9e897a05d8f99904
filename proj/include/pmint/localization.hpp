#pragma once

#include <utility>

#include "pmint/wavefunction.hpp"

namespace pmint {

// The three coefficients characterizing how well a component wavefunction is
// localized in its target interval of width L:
//   coherent_spread C    = (1/sqrt(L)) * integral of the amplitude
//   mismatch eta         = probability weight outside |x| <= L/2
//   cross_section gamma  = Re(windowed amplitude integral / full integral)
struct LocalizationCoefficients {
  complexd coherent_spread;
  double mismatch;
  double cross_section;
};

complexd coherent_spread(const Wavefunction& phi_l, double l,
                         const QuadratureSpec& spec = {});
double statistical_mismatch(const Wavefunction& phi_l, double l,
                            const QuadratureSpec& spec = {});
// Throws DegenerateStateError when the full-axis amplitude integral vanishes
// (below 1e-12 * sqrt(L)).
double coherent_cross_section(const Wavefunction& phi_l, double l,
                              const QuadratureSpec& spec = {});

// All three by quadrature; the validation path for the closed forms below.
LocalizationCoefficients measure_localization(const Wavefunction& phi_l,
                                              double l,
                                              const QuadratureSpec& spec = {});

// Closed forms for the Gaussian family parameterized by its squared coherent
// spread: eta = 1 - erf(sqrt(pi)/Csq), gamma = erf(sqrt(pi/2)/Csq).
LocalizationCoefficients gaussian_coefficients(double csq);

// Gaussian widths matched to (Csq, U): sigma1 = Csq L / sqrt(8 pi) and
// sigma2 = L / (sqrt(2 pi) U Csq); their product is L^2 / (4 pi U) exactly.
std::pair<double, double> gaussian_sigmas(double csq, double u, double l);

// The unit-norm Gaussian with squared coherent spread csq over interval
// width l: sqrt(2/(csq l)) exp(-2 pi (x/(csq l))^2).
Wavefunction gaussian_localized(double csq, double l);

// The unit-norm rectangle filling the interval: C = 1, eta = 0, gamma = 1.
Wavefunction rectangle_localized(double l);

// Small-U momentum-interval probability of the position-localized component:
// P(B|phi_L) = Csq * U.
double cross_probability(double csq, double u);

// Single-component minimal joint probability P(L)+P(B)-1 = Csq U - eta.
double single_component_joint(const LocalizationCoefficients& coeffs, double u);

}  // namespace pmint
