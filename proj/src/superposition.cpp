#include "pmint/superposition.hpp"

#include <cmath>
#include <stdexcept>

#include "pmint/errors.hpp"

namespace pmint {

Wavefunction PlusState::assembled() const {
  return Wavefunction::superposition(
      {{normalization, phi_l}, {normalization, phi_b}});
}

PlusState build_plus_state(const Wavefunction& phi_l, const Scenario& sc,
                           const QuadratureSpec& spec) {
  if (phi_l.representation() != Representation::position)
    throw std::invalid_argument(
        "build_plus_state: phi_L must be in position representation");
  if (std::abs(norm_squared(phi_l, spec) - 1.0) > 1e-6)
    throw std::invalid_argument("build_plus_state: phi_L must be unit-norm");

  Wavefunction phi_b = fourier_transform(momentum_companion(phi_l, sc), spec);
  const complexd raw = inner_product(phi_l, phi_b, spec);

  PlusState state{phi_l, phi_b, 0.0, 0.0, false};
  if (std::abs(raw) >= 1e-12) {
    // rotate phi_B (never phi_L) so the overlap comes out real nonnegative
    state.phi_b = scaled(phi_b, std::conj(raw) / std::abs(raw));
    state.overlap = std::abs(raw);
    state.phase_fixed = true;
  }
  state.normalization = 1.0 / std::sqrt(2.0 + 2.0 * state.overlap);
  return state;
}

double overlap_estimate(double csq, double u) {
  if (csq < 0.0 || u < 0.0)
    throw std::invalid_argument("overlap_estimate: arguments must be nonnegative");
  return csq * std::sqrt(u);
}

double plus_interval_probability(const PlusState& state, const Scenario& sc,
                                 Condition which, const QuadratureSpec& spec) {
  if (which == Condition::L)
    return interval_probability(state.assembled(),
                                Interval::centered(sc.length), spec);
  return interval_probability(fourier_transform(state.assembled(), spec),
                              Interval::centered(sc.bandwidth()), spec);
}

double plus_probability_estimate(double csq, double eta, double gamma,
                                 double u) {
  const double cu = csq * std::sqrt(u);
  return (1.0 - eta + csq * u + 2.0 * gamma * cu) / (2.0 + 2.0 * cu);
}

double joint_lower_bound_exact(const PlusState& state, const Scenario& sc,
                               const QuadratureSpec& spec) {
  return plus_interval_probability(state, sc, Condition::L, spec) +
         plus_interval_probability(state, sc, Condition::B, spec) - 1.0;
}

double joint_lower_bound_formula(double csq, double eta, double gamma,
                                 double u) {
  const double cu = csq * std::sqrt(u);
  return (csq * u + (2.0 * gamma - 1.0) * cu - eta) / (1.0 + cu);
}

bool uncertainty_bound_check(double pl, double pb, double u) {
  if (pl < 0.0 || pl > 1.0 || pb < 0.0 || pb > 1.0)
    throw std::invalid_argument("uncertainty_bound_check: probabilities in [0,1]");
  return pl + pb <= 1.0 + std::sqrt(u) + 1e-9;
}

}  // namespace pmint
