#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pmint/localization.hpp"
#include "pmint/propagation.hpp"

namespace pmint {

// All probabilities of one scenario: exact quadrature values plus the
// coefficient bounds. The defect comes in two labeled variants, one against
// the exact P(M) and one against the envelope integral.
struct ProbabilityReport {
  double p_l = 0.0;
  double p_b = 0.0;
  double joint_lower = 0.0;      // p_l + p_b - 1
  double sqrt_u = 0.0;
  double p_m_exact = 0.0;
  double p_m_envelope = 0.0;     // exact envelope integral
  double defect_exact = 0.0;     // joint_lower - p_m_exact
  double defect_envelope = 0.0;  // joint_lower - p_m_envelope
  double defect_bound = 0.0;     // coefficient lower bound
  double ratio = 0.0;            // p_m_envelope / joint_lower
  Scenario scenario;
  LocalizationCoefficients coefficients;
};

// Coefficient lower bound on the defect probability:
// ((2 gamma - 1) Csq sqrt(U) - 3 Csq U - eta) / (1 + Csq sqrt(U)).
double defect_bound(double csq, double eta, double gamma, double u);

// Ideal rectangle limit: (sqrt(U)/(1+sqrt(U))) (1 - 3 sqrt(U)).
double rect_defect_bound(double u);

// Assembles the full report from exact quadrature (p_l, p_b, p_m) and the
// coefficient formulas.
ProbabilityReport probability_report(const PlusState& state, const Scenario& sc,
                                     const QuadratureSpec& spec = {});

// Upper bound on P(M) / (P(L)+P(B)-1):
// 4 Csq U / (Csq U + (2 gamma - 1) Csq sqrt(U) - eta).
// Throws NoViolationError when the denominator is not positive.
double ratio_bound(double csq, double eta, double gamma, double u);

// Highly localized limit P(L|psi_+) = P(B|psi_+) = (1 + Csq sqrt(U))/2,
// valid for Csq sqrt(U) < 0.2 (throws ApproximationDomainError beyond).
double very_localized_probability(double csq, double u);

enum class Family { gaussian, rectangle };

struct AxisRange {
  double lo, hi;
  int steps;
};

struct SweepOptimum {
  double u = 0.0;
  double csq = 0.0;
  double value = 0.0;
};

// Rectangular sweep of the defect-probability lower bound over (U, Csq).
// defect is row-major with U as the outer index; optimum is the grid maximum
// and refined the golden-section polish around it (parameter tolerance 1e-4).
struct SweepGrid {
  std::vector<double> u_values;
  std::vector<double> csq_values;
  std::vector<double> defect;
  SweepOptimum optimum;
  SweepOptimum refined;

  double at(std::size_t iu, std::size_t ic) const {
    return defect[iu * csq_values.size() + ic];
  }
};

// Fills the grid from the closed-form coefficients; cells are evaluated in
// parallel (thread count from PMINT_THREADS, default hardware concurrency)
// with output identical to sequential evaluation.
SweepGrid sweep(const AxisRange& u_range, const AxisRange& csq_range,
                Family family);

// Csq at which the Gaussian-family defect bound crosses zero for fixed U,
// searched upward from the optimum.
double zero_crossing_csq(double u);

// Per-U zero crossings of the sweep grid, linearly interpolated.
std::vector<std::pair<double, double>> zero_contour(const SweepGrid& grid);

// CSV matrix "U,Csq,defect_bound" (row-major, U outer).
void write_sweep_csv(const SweepGrid& grid, const std::string& path);

// JSON summary {"optimum": {...}, "grid_optimum": {...},
// "zero_contour_samples": [...]}; optimum is the refined one.
void write_sweep_summary_json(const SweepGrid& grid, const std::string& path);

}  // namespace pmint
