#pragma once

#include "pmint/scenario.hpp"
#include "pmint/wavefunction.hpp"

namespace pmint {

// The initial-condition targets: position window L, momentum window B.
enum class Condition { L, B };

// Equal-weight constructive superposition of a position-localized component
// and its momentum-localized companion, with the companion's global phase
// fixed so that the overlap is real and nonnegative.
struct PlusState {
  Wavefunction phi_l;    // position representation
  Wavefunction phi_b;    // position representation, phase-fixed
  double overlap;        // <phi_L|phi_B> after phase fixing, >= 0
  double normalization;  // 1 / sqrt(2 + 2 overlap)
  bool phase_fixed;      // false when |overlap| < 1e-12 (phase undefined)

  // N * (phi_L + phi_B)
  Wavefunction assembled() const;
};

// Builds phi_B through momentum_companion, fixes its phase (phi_B only is
// rotated), and computes the exact quadrature overlap. phi_L must be
// unit-norm (within 1e-6) and in position representation.
PlusState build_plus_state(const Wavefunction& phi_l, const Scenario& sc,
                           const QuadratureSpec& spec = {});

// Small-U closed form of the overlap: Csq * sqrt(U).
double overlap_estimate(double csq, double u);

// Exact quadrature of |psi_+|^2 over the position window [-L/2, L/2] or the
// momentum window [-B/2, B/2].
double plus_interval_probability(const PlusState& state, const Scenario& sc,
                                 Condition which,
                                 const QuadratureSpec& spec = {});

// Coefficient estimate of the same probability:
// (1 - eta + Csq U + 2 gamma Csq sqrt(U)) / (2 + 2 Csq sqrt(U)).
double plus_probability_estimate(double csq, double eta, double gamma, double u);

// P(L|psi_+) + P(B|psi_+) - 1 from exact quadrature.
double joint_lower_bound_exact(const PlusState& state, const Scenario& sc,
                               const QuadratureSpec& spec = {});

// Coefficient form of the minimal joint probability:
// (Csq U + (2 gamma - 1) Csq sqrt(U) - eta) / (1 + Csq sqrt(U)).
double joint_lower_bound_formula(double csq, double eta, double gamma, double u);

// True iff pl + pb <= 1 + sqrt(U) + 1e-9; this is a theorem for physical
// states, so a false return flags a numerical bug upstream.
bool uncertainty_bound_check(double pl, double pb, double u);

}  // namespace pmint
