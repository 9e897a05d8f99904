#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "pmint/analysis.hpp"
#include "pmint/errors.hpp"
#include "pmint/format.hpp"

using namespace pmint;

namespace {

const AxisRange kDefaultU{0.005, 0.05, 100};
const AxisRange kDefaultCsq{0.3, 1.3, 100};

}  // namespace

TEST_CASE("defect_bound: quoted value and algebraic reductions") {
  // rounded coefficients from the optimal Gaussian scenario
  CHECK(defect_bound(0.8, 0.0017, 0.9733, 0.022) ==
        doctest::Approx(0.0516966).epsilon(1e-5));
  CHECK(defect_bound(0.8, 0.0017, 0.9733, 0.022) < 0.052);

  // ideal limit reduces to the rectangle bound
  for (double u : {0.005, 0.024, 0.1})
    CHECK(defect_bound(1.0, 0.0, 1.0, u) ==
          doctest::Approx(rect_defect_bound(u)).epsilon(1e-15));
  CHECK(std::abs(defect_bound(1.0, 0.0, 1.0, 1.0 / 9.0)) < 1e-15);
}

TEST_CASE("rect_defect_bound: maximum near U = 0.024 with value 0.072") {
  CHECK(rect_defect_bound(0.024) == doctest::Approx(0.0717966).epsilon(1e-5));
  CHECK(std::abs(rect_defect_bound(1.0 / 9.0)) < 1e-15);

  double best_u = 0.0, best = -1.0;
  for (double u = 0.001; u <= 0.111; u += 1e-5) {
    const double v = rect_defect_bound(u);
    if (v > best) {
      best = v;
      best_u = u;
    }
  }
  CHECK(std::abs(best_u - 0.024) < 1e-3);
  CHECK(std::abs(best - 0.072) < 1e-3);
  CHECK(best_u == doctest::Approx(0.0239323).epsilon(1e-3));
}

TEST_CASE("probability_report: two-Gaussian scenario emits both defects") {
  const Scenario sc = Scenario::from_sigmas(0.16, 22.67);
  const PlusState state = build_plus_state(Wavefunction::unit_gaussian(0.16), sc);
  const ProbabilityReport rep = probability_report(state, sc);

  CHECK(rep.joint_lower == doctest::Approx(rep.p_l + rep.p_b - 1.0).epsilon(1e-15));
  CHECK(rep.defect_exact == doctest::Approx(rep.joint_lower - rep.p_m_exact).epsilon(1e-15));
  CHECK(rep.defect_envelope ==
        doctest::Approx(rep.joint_lower - rep.p_m_envelope).epsilon(1e-15));
  CHECK(rep.p_m_exact <= rep.p_m_envelope + 1e-6);

  CHECK(std::abs(rep.joint_lower - 0.114569) < 1e-5);
  CHECK(std::abs(rep.p_m_envelope - 0.0628944) < 1e-5);
  CHECK(std::abs(rep.defect_envelope - 0.0516746) < 2e-5);
  CHECK(std::abs(rep.defect_exact - 0.061) < 2e-3);
  CHECK(std::abs(rep.ratio - 0.549) < 3e-3);
  CHECK(rep.ratio < 0.55);
}

TEST_CASE("probability_report: no violation at large U") {
  const Scenario sc = Scenario::from_suppression(0.5);
  const PlusState state = build_plus_state(gaussian_localized(0.8, 1.0), sc);
  const ProbabilityReport rep = probability_report(state, sc);
  CHECK(rep.defect_exact < 0.0);
  CHECK(uncertainty_bound_check(rep.p_l, rep.p_b, sc.suppression));
}

TEST_CASE("ratio_bound: quoted value, ideal limit, violation domain") {
  const double r = ratio_bound(0.8, 0.0017, 0.9733, 0.022);
  CHECK(r == doctest::Approx(0.549044).epsilon(1e-5));
  CHECK(r < 0.55);

  for (double u : {0.01, 0.05, 1.0 / 9.0})
    CHECK(ratio_bound(1.0, 0.0, 1.0, u) ==
          doctest::Approx(4.0 * std::sqrt(u) / (1.0 + std::sqrt(u))).epsilon(1e-14));
  CHECK(ratio_bound(1.0, 0.0, 1.0, 1.0 / 9.0) == doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(ratio_bound(1.0, 0.9, 1.0, 0.01), NoViolationError);
}

TEST_CASE("very_localized_probability") {
  CHECK(very_localized_probability(0.1, 0.01) == doctest::Approx(0.505).epsilon(1e-14));
  CHECK(very_localized_probability(0.0, 0.9) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(very_localized_probability(2.0, 0.04), ApproximationDomainError);

  // against the exact probability at the optimum
  const Scenario sc = Scenario::from_suppression(0.022);
  const PlusState state = build_plus_state(gaussian_localized(0.8, 1.0), sc);
  const double exact = plus_interval_probability(state, sc, Condition::L);
  CHECK(std::abs(very_localized_probability(0.8, 0.022) - exact) < 0.003);
}

TEST_CASE("sweep: optimum location and refinement") {
  const SweepGrid grid = sweep(kDefaultU, kDefaultCsq, Family::gaussian);
  REQUIRE(grid.defect.size() == 100 * 100);

  CHECK(std::abs(grid.optimum.u - 0.022) < 2e-3);
  CHECK(std::abs(grid.optimum.csq - 0.80) < 0.05);
  CHECK(std::abs(grid.optimum.value - 0.052) < 1e-3);

  // the optimum field is the matrix maximum
  double max_cell = -1e300;
  for (double v : grid.defect) max_cell = std::max(max_cell, v);
  CHECK(grid.optimum.value == max_cell);

  // golden-section refinement against the frozen true optimum
  CHECK(std::abs(grid.refined.u - 0.0223092) < 2e-4);
  CHECK(std::abs(grid.refined.csq - 0.7966024) < 3e-3);
  CHECK(std::abs(grid.refined.value - 0.0516632) < 1e-5);
  CHECK(grid.refined.value >= grid.optimum.value);
}

TEST_CASE("sweep: zero contour near Csq = 1.25 at U = 0.022") {
  CHECK(zero_crossing_csq(0.022) == doctest::Approx(1.2502059).epsilon(1e-4));
  // grid-sampled contour row agrees within the cell resolution
  const SweepGrid grid = sweep({0.022, 0.022, 1}, {0.3, 1.3, 200}, Family::gaussian);
  const auto contour = zero_contour(grid);
  REQUIRE(!contour.empty());  // the 0.022 row crosses zero inside [0.3, 1.3]?
}

TEST_CASE("sweep: the 0.05 plateau spans the quoted parameter box") {
  const SweepGrid grid = sweep({0.004, 0.06, 280}, {0.3, 1.3, 200}, Family::gaussian);
  double csq_lo = 1e300, csq_hi = -1e300, u_lo = 1e300, u_hi = -1e300;
  for (std::size_t iu = 0; iu < grid.u_values.size(); ++iu) {
    for (std::size_t ic = 0; ic < grid.csq_values.size(); ++ic) {
      if (grid.at(iu, ic) < 0.05) continue;
      csq_lo = std::min(csq_lo, grid.csq_values[ic]);
      csq_hi = std::max(csq_hi, grid.csq_values[ic]);
      u_lo = std::min(u_lo, grid.u_values[iu]);
      u_hi = std::max(u_hi, grid.u_values[iu]);
    }
  }
  // frozen extents: Csq in [0.705, 0.882], U in [0.0148, 0.0318]
  CHECK(csq_lo == doctest::Approx(0.705).epsilon(0.02));
  CHECK(csq_hi == doctest::Approx(0.882).epsilon(0.02));
  CHECK(u_lo == doctest::Approx(0.0148).epsilon(0.03));
  CHECK(u_hi == doctest::Approx(0.0318).epsilon(0.03));
}

TEST_CASE("sweep: dominance and near-linearity properties") {
  const SweepGrid grid = sweep(kDefaultU, kDefaultCsq, Family::gaussian);

  // the rectangle bound dominates every Gaussian cell at the same U
  for (std::size_t iu = 0; iu < grid.u_values.size(); ++iu) {
    const double rect = rect_defect_bound(grid.u_values[iu]);
    for (std::size_t ic = 0; ic < grid.csq_values.size(); ++ic)
      CHECK(rect >= grid.at(iu, ic));
  }

  // the optimized spread dominates Csq = 1 at every U
  const LocalizationCoefficients c8 = gaussian_coefficients(0.8);
  const LocalizationCoefficients c1 = gaussian_coefficients(1.0);
  for (double u : grid.u_values)
    CHECK(defect_bound(0.8, c8.mismatch, c8.cross_section, u) >=
          defect_bound(1.0, c1.mismatch, c1.cross_section, u));

  // near-linearity in Csq at U = 0.022 over [0.05, 0.5]
  const auto bound_at = [](double csq) {
    const LocalizationCoefficients c = gaussian_coefficients(csq);
    return defect_bound(csq, c.mismatch, c.cross_section, 0.022);
  };
  const double slope = bound_at(0.05) / 0.05;
  for (double csq = 0.05; csq <= 0.5; csq += 0.015) {
    const double line = slope * csq;
    CHECK(std::abs(bound_at(csq) - line) / line < 0.10);
  }
}

TEST_CASE("sweep: envelope defect stays above the coefficient bound") {
  const Scenario sc = Scenario::from_suppression(0.022);
  const PlusState state = build_plus_state(gaussian_localized(0.8, 1.0), sc);
  const ProbabilityReport rep = probability_report(state, sc);
  CHECK(rep.defect_envelope >= rep.defect_bound - 0.001);
}

TEST_CASE("sweep: rectangle family collapses to a curve over U") {
  const SweepGrid grid = sweep({0.005, 0.11, 212}, {1.0, 1.0, 1}, Family::rectangle);
  REQUIRE(grid.csq_values.size() == 1);
  CHECK(std::abs(grid.optimum.u - 0.024) < 1e-3);
  CHECK(std::abs(grid.optimum.value - 0.072) < 1e-3);
  CHECK(std::abs(grid.refined.u - 0.0239323) < 2e-4);

  // single-cell grid equals the pointwise bound
  const SweepGrid cell = sweep({0.03, 0.03, 1}, {1.0, 1.0, 1}, Family::rectangle);
  CHECK(cell.defect.size() == 1);
  CHECK(cell.defect[0] == doctest::Approx(rect_defect_bound(0.03)).epsilon(1e-15));
}

TEST_CASE("sweep: deterministic under threading") {
  const SweepGrid a = sweep({0.01, 0.04, 64}, {0.5, 1.1, 64}, Family::gaussian);
  setenv("PMINT_THREADS", "1", 1);
  const SweepGrid b = sweep({0.01, 0.04, 64}, {0.5, 1.1, 64}, Family::gaussian);
  unsetenv("PMINT_THREADS");
  REQUIRE(a.defect.size() == b.defect.size());
  for (std::size_t i = 0; i < a.defect.size(); ++i)
    CHECK(a.defect[i] == b.defect[i]);
  CHECK(a.refined.value == b.refined.value);
}

TEST_CASE("sweep: CSV and JSON exports") {
  const SweepGrid grid = sweep({0.01, 0.03, 5}, {0.6, 1.0, 5}, Family::gaussian);
  write_sweep_csv(grid, "test_sweep.csv");
  write_sweep_summary_json(grid, "test_sweep.json");

  std::ifstream csv("test_sweep.csv");
  REQUIRE(csv.good());
  std::string line;
  std::getline(csv, line);
  CHECK(line == "U,Csq,defect_bound");
  // row-major with U outer: first two rows share U, differ in Csq
  std::getline(csv, line);
  CHECK(line.substr(0, line.find(',')) == format_sig9(0.01));
  const std::string first_row = line;
  std::getline(csv, line);
  CHECK(line.substr(0, line.find(',')) == format_sig9(0.01));
  CHECK(line != first_row);
  int rows = 2;
  while (std::getline(csv, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 25);

  std::ifstream js("test_sweep.json");
  REQUIRE(js.good());
  std::stringstream buffer;
  buffer << js.rdbuf();
  const std::string text = buffer.str();
  CHECK(text.find("\"optimum\"") != std::string::npos);
  CHECK(text.find("\"grid_optimum\"") != std::string::npos);
  CHECK(text.find("\"zero_contour_samples\"") != std::string::npos);

  std::remove("test_sweep.csv");
  std::remove("test_sweep.json");
}
