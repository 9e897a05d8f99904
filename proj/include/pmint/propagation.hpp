#pragma once

#include <optional>
#include <string>

#include "pmint/superposition.hpp"

namespace pmint {

// psi_+ evolved to the meeting time t = m L / B.
struct PropagatedState {
  Wavefunction amplitude;  // position representation at time t
  double time;
  Scenario scenario;
  PlusState source;
};

// Free evolution by t: the momentum representation is multiplied by
// exp(-i p^2 t / (2 m hbar)) and the result returned in position
// representation. Gaussian inputs evolve in closed form (position variance
// sigma^2 + (hbar t / (2 m sigma))^2), grids through the spectral path,
// rectangles and their Fourier images through exact chirped quadrature.
Wavefunction propagate_free(const Wavefunction& wf, double t,
                            const Scenario& sc);

PropagatedState propagate_plus_state(const PlusState& state, const Scenario& sc);

// Exact probability of |x(t)| <= L at t = m L / B, including the oscillatory
// interference phase. The window [-L, L] is integrated over at least 64
// panels so the adaptive rule cannot undersample the slow chirp.
double probability_M_exact(const PlusState& state, const Scenario& sc,
                           const QuadratureSpec& spec = {});

// Constructive-interference upper bound in coefficient form:
// 4 Csq U / (1 + Csq sqrt(U)).
double probability_M_envelope(double csq, double u);

// Exact integral of the envelope (cosine replaced by one) over [-L, L]:
// integral of N^2 (|phi_L(t)| + |phi_B(t)|)^2.
double envelope_integral(const PlusState& state, const Scenario& sc,
                         const QuadratureSpec& spec = {});

// |<x|U(mL/B)|psi_+>|^2 at one point, exact.
double interference_pattern_density(const PropagatedState& prop, double x);
double interference_pattern_density(const PlusState& state, const Scenario& sc,
                                    double x);

// Stationary-component approximation of the same density:
// 2 |phi_B(x)|^2 cos^2((pi/2)(sqrt(U) x / L)^2 - pi/8) / (1 + overlap).
double interference_pattern_approx(const PlusState& state, const Scenario& sc,
                                   double x);

// Interference pattern scaled by the minimal joint probability in the ideal
// eta = 0, gamma = 1 limit:
// (4 sqrt(U)/(1+sqrt(U))) (1/2 + cos(pi (sqrt(U) x/L)^2 - pi/4)/2).
double scaled_pattern(double u, double x_over_l);

// Effective width L / sqrt(U) of the interference contribution, the value of
// the full-axis integral of the chirped cosine.
double effective_width(double u, double l);

// Density profile export, columns x,density_exact,density_envelope,
// density_approx and optionally a constant reference_level column.
// Samples `points` rows uniformly over [-x_max, x_max].
void write_density_csv(const PlusState& state, const Scenario& sc, double x_max,
                       int points, const std::string& path,
                       std::optional<double> reference_level = std::nullopt,
                       bool at_time_zero = false);

}  // namespace pmint
