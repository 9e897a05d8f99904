#pragma once

#include <cmath>
#include <stdexcept>

namespace pmint {

// Physical configuration of one interval experiment in dimensionless units
// (hbar = 1, mass = 1). The position target is |x| <= L/2, the momentum
// target |p| <= B/2 with B = 2 pi U hbar / L, and the arrival interval is
// |x(t)| <= L at the meeting time t = m L / B where the spreads of the two
// localized components coincide.
struct Scenario {
  double length = 1.0;       // L
  double suppression = 0.0;  // U = L B / (2 pi hbar)
  double hbar = 1.0;
  double mass = 1.0;

  double bandwidth() const { return 2.0 * M_PI * suppression * hbar / length; }
  double evolution_time() const { return mass * length / bandwidth(); }

  static Scenario from_suppression(double u, double l = 1.0) {
    if (!(u > 0.0 && u < 1.0))
      throw std::invalid_argument("Scenario: U must be in (0, 1)");
    if (!(l > 0.0)) throw std::invalid_argument("Scenario: L must be positive");
    Scenario sc;
    sc.length = l;
    sc.suppression = u;
    return sc;
  }

  // Configuration matched to a pair of Gaussian widths: the companion of a
  // position Gaussian with width sigma1 has position width sigma2 exactly
  // when sigma1 * sigma2 = L^2 / (4 pi U).
  static Scenario from_sigmas(double sigma1, double sigma2, double l = 1.0) {
    if (!(sigma1 > 0.0) || !(sigma2 > 0.0))
      throw std::invalid_argument("Scenario: sigmas must be positive");
    return from_suppression(l * l / (4.0 * M_PI * sigma1 * sigma2), l);
  }
};

}  // namespace pmint
