#include "pmint/localization.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pmint/errors.hpp"
#include "pmint/numerics.hpp"

namespace pmint {

namespace {

// Complex amplitude integral over [lo, hi], split at discontinuities.
complexd amplitude_integral(const Wavefunction& wf, double lo, double hi,
                            const QuadratureSpec& spec) {
  complexd total = 0.0;
  std::vector<double> pts{lo};
  for (double b : discontinuities(wf))
    if (b > lo && b < hi) pts.push_back(b);
  pts.push_back(hi);
  std::sort(pts.begin(), pts.end());
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    total += integrate_complex([&](double u) { return wf(u); }, pts[i],
                               pts[i + 1], spec);
  return total;
}

complexd full_axis_amplitude_integral(const Wavefunction& wf,
                                      const QuadratureSpec& spec) {
  const auto support = effective_support(wf);
  if (!support)
    throw std::invalid_argument(
        "localization: wavefunction without bounded support");
  return amplitude_integral(wf, support->lo, support->hi, spec);
}

}  // namespace

complexd coherent_spread(const Wavefunction& phi_l, double l,
                         const QuadratureSpec& spec) {
  if (!(l > 0.0)) throw std::invalid_argument("coherent_spread: L must be positive");
  return full_axis_amplitude_integral(phi_l, spec) / std::sqrt(l);
}

double statistical_mismatch(const Wavefunction& phi_l, double l,
                            const QuadratureSpec& spec) {
  if (!(l > 0.0))
    throw std::invalid_argument("statistical_mismatch: L must be positive");
  return 1.0 - interval_probability(phi_l, Interval::centered(l), spec);
}

double coherent_cross_section(const Wavefunction& phi_l, double l,
                              const QuadratureSpec& spec) {
  if (!(l > 0.0))
    throw std::invalid_argument("coherent_cross_section: L must be positive");
  const complexd denom = full_axis_amplitude_integral(phi_l, spec);
  if (std::abs(denom) < 1e-12 * std::sqrt(l))
    throw DegenerateStateError(
        "coherent_cross_section: full-axis amplitude integral vanishes");
  const complexd num =
      amplitude_integral(phi_l, -0.5 * l, 0.5 * l, spec);
  return (num / denom).real();
}

LocalizationCoefficients measure_localization(const Wavefunction& phi_l,
                                              double l,
                                              const QuadratureSpec& spec) {
  return {coherent_spread(phi_l, l, spec), statistical_mismatch(phi_l, l, spec),
          coherent_cross_section(phi_l, l, spec)};
}

LocalizationCoefficients gaussian_coefficients(double csq) {
  if (!(csq > 0.0))
    throw std::invalid_argument("gaussian_coefficients: Csq must be positive");
  return {std::sqrt(csq), 1.0 - erf(std::sqrt(M_PI) / csq),
          erf(std::sqrt(0.5 * M_PI) / csq)};
}

std::pair<double, double> gaussian_sigmas(double csq, double u, double l) {
  if (!(csq > 0.0) || !(u > 0.0) || !(l > 0.0))
    throw std::invalid_argument("gaussian_sigmas: arguments must be positive");
  const double sigma1 = csq * l / std::sqrt(8.0 * M_PI);
  const double sigma2 = l / (std::sqrt(2.0 * M_PI) * u * csq);
  return {sigma1, sigma2};
}

Wavefunction gaussian_localized(double csq, double l) {
  if (!(csq > 0.0) || !(l > 0.0))
    throw std::invalid_argument("gaussian_localized: arguments must be positive");
  return Wavefunction::unit_gaussian(csq * l / std::sqrt(8.0 * M_PI));
}

Wavefunction rectangle_localized(double l) {
  if (!(l > 0.0))
    throw std::invalid_argument("rectangle_localized: L must be positive");
  return Wavefunction::unit_rectangle(l);
}

double cross_probability(double csq, double u) {
  if (csq < 0.0 || u < 0.0)
    throw std::invalid_argument("cross_probability: arguments must be nonnegative");
  return csq * u;
}

double single_component_joint(const LocalizationCoefficients& coeffs, double u) {
  return std::norm(coeffs.coherent_spread) * u - coeffs.mismatch;
}

}  // namespace pmint
