#include "pmint/propagation.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pmint/errors.hpp"
#include "pmint/format.hpp"

namespace pmint {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// Aliasing guards for the spectral path. Spectral mass at the band edge means
// the chirp cannot be applied faithfully; mass at the box edge after the
// evolution means the state wrapped around. Both thresholds are generous:
// heavy-tailed spectra (sampled rectangles) legitimately carry a little mass
// everywhere and still give accurate window probabilities.
constexpr double kSpectrumEdgeMass = 1e-3;
constexpr double kBoxEdgeMass = 5e-3;

ChirpedGaussianForm evolve_chirped(const ChirpedGaussianForm& g, double t) {
  const complexd at = g.a + complexd(0.0, 0.5 * t);
  return {at, g.center, g.amplitude * std::sqrt(g.a / at)};
}

double edge_mass_fraction(const std::vector<complexd>& v, std::size_t edge) {
  double total = 0.0, edge_mass = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double m = std::norm(v[i]);
    total += m;
    if (i < edge || i >= v.size() - edge) edge_mass += m;
  }
  return total > 0.0 ? edge_mass / total : 0.0;
}

Wavefunction propagate_grid(const GridForm& g, double t) {
  const std::size_t n = g.samples.size();
  if ((n & (n - 1)) != 0)
    throw std::invalid_argument("propagate_free: grid size must be a power of two");
  const double dp = kTwoPi / (g.step * static_cast<double>(n));

  std::vector<complexd> work(n);
  for (std::size_t j = 0; j < n; ++j)
    work[j] = (j % 2 == 0) ? g.samples[j] : -g.samples[j];
  fft(work, /*inverse=*/false);

  if (edge_mass_fraction(work, n / 8) > kSpectrumEdgeMass)
    throw ResolutionError(
        "propagate_free: spectrum reaches the band edge; grid too coarse for the chirp");

  for (std::size_t m = 0; m < n; ++m) {
    const double p = dp * (static_cast<double>(m) - 0.5 * static_cast<double>(n));
    work[m] *= std::exp(complexd(0.0, -0.5 * p * p * t));
  }
  fft(work, /*inverse=*/true);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    work[j] *= inv_n;
    if (j % 2 == 1) work[j] = -work[j];
  }

  if (edge_mass_fraction(work, n / 16) > kBoxEdgeMass)
    throw ResolutionError(
        "propagate_free: evolved state reaches the grid box edge (wrap-around)");

  return Wavefunction::grid(std::move(work), g.step, g.origin,
                            Representation::position);
}

}  // namespace

Wavefunction propagate_free(const Wavefunction& wf, double t,
                            const Scenario& sc) {
  const Wavefunction pos = wf.representation() == Representation::position
                               ? wf
                               : fourier_transform(wf);
  if (t == 0.0) return pos;
  const double tau = t * sc.hbar / sc.mass;  // hbar = m = 1 throughout

  const auto& form = pos.form();
  if (const auto* g = std::get_if<GaussianForm>(&form)) {
    const ChirpedGaussianForm e = evolve_chirped(
        {complexd(g->sigma * g->sigma, 0.0), g->center, g->amplitude}, tau);
    return {Representation::position, e};
  }
  if (const auto* c = std::get_if<ChirpedGaussianForm>(&form))
    return {Representation::position, evolve_chirped(*c, tau)};
  if (std::get_if<RectangleForm>(&form) || std::get_if<SincForm>(&form))
    return {Representation::position,
            EvolvedForm{std::make_shared<const Wavefunction>(pos), tau}};
  if (const auto* gr = std::get_if<GridForm>(&form))
    return propagate_grid(*gr, tau);
  if (const auto* sp = std::get_if<SuperpositionForm>(&form)) {
    SuperpositionForm out;
    out.parts.reserve(sp->parts.size());
    for (const auto& p : sp->parts)
      out.parts.push_back({p.weight, std::make_shared<const Wavefunction>(
                                         propagate_free(*p.wf, t, sc))});
    return {Representation::position, std::move(out)};
  }
  const auto& ev = std::get<EvolvedForm>(form);
  const double total = ev.time + tau;
  if (total == 0.0) return *ev.source;
  return {Representation::position, EvolvedForm{ev.source, total}};
}

PropagatedState propagate_plus_state(const PlusState& state,
                                     const Scenario& sc) {
  const double t = sc.evolution_time();
  return {propagate_free(state.assembled(), t, sc), t, sc, state};
}

double probability_M_exact(const PlusState& state, const Scenario& sc,
                           const QuadratureSpec& spec) {
  const Wavefunction amp =
      propagate_free(state.assembled(), sc.evolution_time(), sc);
  const double l = sc.length;
  const int panels = 64;
  double sum = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double a = -l + 2.0 * l * static_cast<double>(k) / panels;
    const double b = -l + 2.0 * l * static_cast<double>(k + 1) / panels;
    sum += integrate([&](double x) { return std::norm(amp(x)); }, a, b, spec);
  }
  return sum;
}

double probability_M_envelope(double csq, double u) {
  if (!(csq > 0.0) || u < 0.0)
    throw std::invalid_argument("probability_M_envelope: bad arguments");
  return 4.0 * csq * u / (1.0 + csq * std::sqrt(u));
}

double envelope_integral(const PlusState& state, const Scenario& sc,
                         const QuadratureSpec& spec) {
  const double t = sc.evolution_time();
  const Wavefunction lt = propagate_free(state.phi_l, t, sc);
  const Wavefunction bt = propagate_free(state.phi_b, t, sc);
  const double n2 = state.normalization * state.normalization;
  const auto envelope = [&](double x) {
    const double v = std::abs(lt(x)) + std::abs(bt(x));
    return n2 * v * v;
  };
  return integrate(envelope, -sc.length, sc.length, spec);
}

double interference_pattern_density(const PropagatedState& prop, double x) {
  return std::norm(prop.amplitude(x));
}

double interference_pattern_density(const PlusState& state, const Scenario& sc,
                                    double x) {
  return interference_pattern_density(propagate_plus_state(state, sc), x);
}

double interference_pattern_approx(const PlusState& state, const Scenario& sc,
                                   double x) {
  const double su = std::sqrt(sc.suppression);
  const double phase = 0.5 * M_PI * (su * x / sc.length) * (su * x / sc.length) -
                       M_PI / 8.0;
  const double c = std::cos(phase);
  return 2.0 * std::norm(state.phi_b(x)) * c * c / (1.0 + state.overlap);
}

double scaled_pattern(double u, double x_over_l) {
  if (!(u > 0.0)) throw std::invalid_argument("scaled_pattern: U must be positive");
  const double su = std::sqrt(u);
  const double amplitude = 4.0 * su / (1.0 + su);
  return amplitude *
         (0.5 + 0.5 * std::cos(M_PI * u * x_over_l * x_over_l - 0.25 * M_PI));
}

double effective_width(double u, double l) {
  if (!(u > 0.0) || !(l > 0.0))
    throw std::invalid_argument("effective_width: arguments must be positive");
  return l / std::sqrt(u);
}

void write_density_csv(const PlusState& state, const Scenario& sc, double x_max,
                       int points, const std::string& path,
                       std::optional<double> reference_level,
                       bool at_time_zero) {
  if (!(x_max > 0.0) || points < 2)
    throw std::invalid_argument("write_density_csv: bad range or point count");
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_density_csv: cannot open " + path);

  const double t = at_time_zero ? 0.0 : sc.evolution_time();
  const Wavefunction amp = propagate_free(state.assembled(), t, sc);
  const Wavefunction lt = propagate_free(state.phi_l, t, sc);
  const Wavefunction bt = propagate_free(state.phi_b, t, sc);
  const double n2 = state.normalization * state.normalization;

  os << "x,density_exact,density_envelope,density_approx";
  if (reference_level) os << ",reference_level";
  os << '\n';
  const double step = 2.0 * x_max / static_cast<double>(points - 1);
  for (int k = 0; k < points; ++k) {
    const double x = -x_max + step * static_cast<double>(k);
    const double exact = std::norm(amp(x));
    const double ev = std::abs(lt(x)) + std::abs(bt(x));
    const double envelope = n2 * ev * ev;
    const double approx = interference_pattern_approx(state, sc, x);
    os << format_sig9(x) << ',' << format_sig9(exact) << ','
       << format_sig9(envelope) << ',' << format_sig9(approx);
    if (reference_level) os << ',' << format_sig9(*reference_level);
    os << '\n';
  }
}

}  // namespace pmint
