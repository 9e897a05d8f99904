#include "pmint/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "pmint/errors.hpp"
#include "pmint/format.hpp"

namespace pmint {

namespace {

int thread_count() {
  if (const char* env = std::getenv("PMINT_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Static block partition; each index writes only its own results, so the
// output does not depend on the thread count.
void parallel_for(int n, const std::function<void(int)>& fn) {
  const int workers = std::min(thread_count(), std::max(1, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

std::vector<double> linspace(const AxisRange& r) {
  if (r.steps < 1 || !(r.lo > 0.0) || !(r.hi >= r.lo))
    throw std::invalid_argument("sweep: axis range must be positive and ordered");
  std::vector<double> v(r.steps);
  if (r.steps == 1) {
    v[0] = r.lo;
    return v;
  }
  const double step = (r.hi - r.lo) / static_cast<double>(r.steps - 1);
  for (int i = 0; i < r.steps; ++i) v[i] = r.lo + step * static_cast<double>(i);
  return v;
}

double family_bound(Family family, double csq, double u) {
  if (family == Family::rectangle) return rect_defect_bound(u);
  const LocalizationCoefficients c = gaussian_coefficients(csq);
  return defect_bound(csq, c.mismatch, c.cross_section, u);
}

// Golden-section maximum of f on [a, b] to parameter tolerance xtol.
template <class F>
std::pair<double, double> golden_max(const F& f, double a, double b,
                                     double xtol) {
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > xtol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

}  // namespace

double defect_bound(double csq, double eta, double gamma, double u) {
  if (!(u > 0.0)) throw std::invalid_argument("defect_bound: U must be positive");
  const double cu = csq * std::sqrt(u);
  return ((2.0 * gamma - 1.0) * cu - 3.0 * csq * u - eta) / (1.0 + cu);
}

double rect_defect_bound(double u) {
  if (!(u > 0.0))
    throw std::invalid_argument("rect_defect_bound: U must be positive");
  const double s = std::sqrt(u);
  return s / (1.0 + s) * (1.0 - 3.0 * s);
}

ProbabilityReport probability_report(const PlusState& state, const Scenario& sc,
                                     const QuadratureSpec& spec) {
  ProbabilityReport rep;
  rep.scenario = sc;
  rep.sqrt_u = std::sqrt(sc.suppression);
  rep.p_l = plus_interval_probability(state, sc, Condition::L, spec);
  rep.p_b = plus_interval_probability(state, sc, Condition::B, spec);
  rep.joint_lower = rep.p_l + rep.p_b - 1.0;
  rep.p_m_exact = probability_M_exact(state, sc, spec);
  rep.p_m_envelope = envelope_integral(state, sc, spec);
  rep.defect_exact = rep.joint_lower - rep.p_m_exact;
  rep.defect_envelope = rep.joint_lower - rep.p_m_envelope;
  rep.coefficients = measure_localization(state.phi_l, sc.length, spec);
  rep.defect_bound =
      defect_bound(std::norm(rep.coefficients.coherent_spread),
                   rep.coefficients.mismatch, rep.coefficients.cross_section,
                   sc.suppression);
  rep.ratio = rep.p_m_envelope / rep.joint_lower;
  return rep;
}

double ratio_bound(double csq, double eta, double gamma, double u) {
  if (!(u > 0.0)) throw std::invalid_argument("ratio_bound: U must be positive");
  const double denom = csq * u + (2.0 * gamma - 1.0) * csq * std::sqrt(u) - eta;
  if (!(denom > 0.0))
    throw NoViolationError(
        "ratio_bound: joint probability not positive; no violation regime");
  return 4.0 * csq * u / denom;
}

double very_localized_probability(double csq, double u) {
  if (csq < 0.0 || u < 0.0)
    throw std::invalid_argument("very_localized_probability: bad arguments");
  const double cu = csq * std::sqrt(u);
  if (!(cu < 0.2))
    throw ApproximationDomainError(
        "very_localized_probability: requires Csq sqrt(U) < 0.2");
  return 0.5 * (1.0 + cu);
}

SweepGrid sweep(const AxisRange& u_range, const AxisRange& csq_range,
                Family family) {
  SweepGrid grid;
  grid.u_values = linspace(u_range);
  grid.csq_values = linspace(csq_range);
  const std::size_t nu = grid.u_values.size();
  const std::size_t nc = grid.csq_values.size();
  grid.defect.assign(nu * nc, 0.0);

  parallel_for(static_cast<int>(nu), [&](int iu) {
    const double u = grid.u_values[iu];
    for (std::size_t ic = 0; ic < nc; ++ic)
      grid.defect[iu * nc + ic] = family_bound(family, grid.csq_values[ic], u);
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < grid.defect.size(); ++i)
    if (grid.defect[i] > grid.defect[best]) best = i;
  const std::size_t bu = best / nc, bc = best % nc;
  grid.optimum = {grid.u_values[bu], grid.csq_values[bc], grid.defect[best]};

  // golden-section polish, one axis at a time within the bracketing cells
  double u_ref = grid.optimum.u, c_ref = grid.optimum.csq;
  double value = grid.optimum.value;
  for (int pass = 0; pass < 2; ++pass) {
    const double ulo = grid.u_values[bu > 0 ? bu - 1 : 0];
    const double uhi = grid.u_values[std::min(bu + 1, nu - 1)];
    if (uhi > ulo) {
      auto [u_best, vu] = golden_max(
          [&](double u) { return family_bound(family, c_ref, u); }, ulo, uhi,
          1e-4);
      u_ref = u_best;
      value = vu;
    }
    const double clo = grid.csq_values[bc > 0 ? bc - 1 : 0];
    const double chi = grid.csq_values[std::min(bc + 1, nc - 1)];
    if (chi > clo && family == Family::gaussian) {
      auto [c_best, vc] = golden_max(
          [&](double c) { return family_bound(family, c, u_ref); }, clo, chi,
          1e-4);
      c_ref = c_best;
      value = vc;
    }
  }
  grid.refined = {u_ref, c_ref, value};
  return grid;
}

double zero_crossing_csq(double u) {
  const auto f = [&](double csq) { return family_bound(Family::gaussian, csq, u); };
  double lo = 1.0, hi = 3.0;
  if (!(f(lo) > 0.0))
    throw NoViolationError("zero_crossing_csq: no violation at Csq = 1");
  while (f(hi) > 0.0) {
    hi *= 2.0;
    if (hi > 1e6)
      throw std::runtime_error("zero_crossing_csq: no sign change found");
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<std::pair<double, double>> zero_contour(const SweepGrid& grid) {
  std::vector<std::pair<double, double>> out;
  const std::size_t nc = grid.csq_values.size();
  for (std::size_t iu = 0; iu < grid.u_values.size(); ++iu) {
    for (std::size_t ic = 0; ic + 1 < nc; ++ic) {
      const double v0 = grid.at(iu, ic);
      const double v1 = grid.at(iu, ic + 1);
      if ((v0 > 0.0) == (v1 > 0.0)) continue;
      const double c0 = grid.csq_values[ic];
      const double c1 = grid.csq_values[ic + 1];
      const double frac = v0 / (v0 - v1);
      out.emplace_back(grid.u_values[iu], c0 + frac * (c1 - c0));
    }
  }
  return out;
}

void write_sweep_csv(const SweepGrid& grid, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_sweep_csv: cannot open " + path);
  os << "U,Csq,defect_bound\n";
  const std::size_t nc = grid.csq_values.size();
  for (std::size_t iu = 0; iu < grid.u_values.size(); ++iu)
    for (std::size_t ic = 0; ic < nc; ++ic)
      os << format_sig9(grid.u_values[iu]) << ','
         << format_sig9(grid.csq_values[ic]) << ','
         << format_sig9(grid.at(iu, ic)) << '\n';
}

void write_sweep_summary_json(const SweepGrid& grid, const std::string& path) {
  std::ofstream os(path);
  if (!os)
    throw std::runtime_error("write_sweep_summary_json: cannot open " + path);
  const auto opt = [&](const SweepOptimum& o) {
    return "{\"U\": " + format_sig9(o.u) + ", \"Csq\": " + format_sig9(o.csq) +
           ", \"value\": " + format_sig9(o.value) + "}";
  };
  os << "{\n  \"optimum\": " << opt(grid.refined)
     << ",\n  \"grid_optimum\": " << opt(grid.optimum)
     << ",\n  \"zero_contour_samples\": [";
  const auto contour = zero_contour(grid);
  for (std::size_t i = 0; i < contour.size(); ++i) {
    if (i) os << ", ";
    os << "{\"U\": " << format_sig9(contour[i].first)
       << ", \"Csq\": " << format_sig9(contour[i].second) << "}";
  }
  os << "]\n}\n";
}

}  // namespace pmint
