#include "pmint/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "pmint/errors.hpp"
#include "pmint/format.hpp"

namespace pmint {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
// |amplitude| drops below 1e-18 of its peak beyond this many widths.
constexpr double kSupportSigmas = 13.0;
// Spectral mass fraction allowed in the outer 1/8 of the band of a
// transformed grid before the input is considered undersampled.
constexpr double kGridEdgeMass = 1e-9;

double sinc(double z) {
  if (std::abs(z) < 1e-8) return 1.0 - z * z / 6.0;
  return std::sin(z) / z;
}

complexd sinc_value(const SincForm& s, Representation rep, double u) {
  const double phase_sign = (rep == Representation::momentum) ? -1.0 : 1.0;
  const complexd phase = std::polar(1.0, phase_sign * u * s.center);
  return s.amplitude * s.width * sinc(0.5 * u * s.width) * phase /
         std::sqrt(kTwoPi);
}

// Amplitude half-width of exp(-(x-c)^2 / (4a)).
double chirped_sigma(const ChirpedGaussianForm& g) {
  return std::abs(g.a) / std::sqrt(g.a.real());
}

// Free evolution of exp(-(x-c)^2/(4a)) by time t (hbar = m = 1).
ChirpedGaussianForm evolve_chirped(const ChirpedGaussianForm& g, double t) {
  const complexd at = g.a + complexd(0.0, 0.5 * t);
  return {at, g.center, g.amplitude * std::sqrt(g.a / at)};
}

ChirpedGaussianForm as_chirped(const GaussianForm& g) {
  return {complexd(g.sigma * g.sigma, 0.0), g.center, g.amplitude};
}

// Inner quadrature tolerances for the lazily evolved forms; tighter than the
// library default so nested integrals stay accurate.
const QuadratureSpec kEvolvedSpec{1e-12, 1e-12, 1 << 12};

complexd evolved_value_position(const Wavefunction& source, double t, double x);

}  // namespace

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (!(lo < hi)) throw std::invalid_argument("Interval: requires lo < hi");
}

Wavefunction::Wavefunction(Representation rep, Form form)
    : rep_(rep), form_(std::make_shared<const Form>(std::move(form))) {
  if (const auto* g = std::get_if<GaussianForm>(form_.get())) {
    if (!(g->sigma > 0.0))
      throw std::invalid_argument("GaussianForm: sigma must be positive");
  } else if (const auto* r = std::get_if<RectangleForm>(form_.get())) {
    if (!(r->width > 0.0))
      throw std::invalid_argument("RectangleForm: width must be positive");
  } else if (const auto* s = std::get_if<SincForm>(form_.get())) {
    if (!(s->width > 0.0))
      throw std::invalid_argument("SincForm: width must be positive");
  } else if (const auto* c = std::get_if<ChirpedGaussianForm>(form_.get())) {
    if (!(c->a.real() > 0.0))
      throw std::invalid_argument("ChirpedGaussianForm: Re(a) must be positive");
  } else if (const auto* gr = std::get_if<GridForm>(form_.get())) {
    if (gr->samples.size() < 2)
      throw std::invalid_argument("GridForm: needs at least two samples");
    if (!(gr->step > 0.0))
      throw std::invalid_argument("GridForm: step must be positive");
  } else if (const auto* sp = std::get_if<SuperpositionForm>(form_.get())) {
    if (sp->parts.empty())
      throw std::invalid_argument("SuperpositionForm: needs at least one part");
    for (const auto& p : sp->parts)
      if (p.wf->representation() != rep_)
        throw std::invalid_argument(
            "SuperpositionForm: parts must share the representation");
  }
}

Wavefunction Wavefunction::gaussian(double sigma, double center,
                                    complexd amplitude, Representation rep) {
  return {rep, GaussianForm{sigma, center, amplitude}};
}

Wavefunction Wavefunction::unit_gaussian(double sigma, Representation rep) {
  const double amp = std::pow(kTwoPi * sigma * sigma, -0.25);
  return gaussian(sigma, 0.0, amp, rep);
}

Wavefunction Wavefunction::rectangle(double width, double center,
                                     complexd amplitude, Representation rep) {
  return {rep, RectangleForm{width, center, amplitude}};
}

Wavefunction Wavefunction::unit_rectangle(double width, Representation rep) {
  return rectangle(width, 0.0, 1.0 / std::sqrt(width), rep);
}

Wavefunction Wavefunction::grid(std::vector<complexd> samples, double step,
                                double origin, Representation rep) {
  return {rep, GridForm{std::move(samples), step, origin}};
}

Wavefunction Wavefunction::superposition(
    std::vector<std::pair<complexd, Wavefunction>> parts) {
  if (parts.empty())
    throw std::invalid_argument("superposition: needs at least one part");
  const Representation rep = parts.front().second.representation();
  SuperpositionForm form;
  form.parts.reserve(parts.size());
  for (auto& [w, wf] : parts)
    form.parts.push_back({w, std::make_shared<const Wavefunction>(std::move(wf))});
  return {rep, std::move(form)};
}

complexd Wavefunction::operator()(double u) const { return evaluate(*this, u); }

complexd evaluate(const Wavefunction& wf, double u) {
  const auto& form = wf.form();
  if (const auto* g = std::get_if<GaussianForm>(&form)) {
    const double d = u - g->center;
    return g->amplitude * std::exp(-d * d / (4.0 * g->sigma * g->sigma));
  }
  if (const auto* r = std::get_if<RectangleForm>(&form)) {
    return (std::abs(u - r->center) <= 0.5 * r->width) ? r->amplitude
                                                       : complexd(0.0);
  }
  if (const auto* s = std::get_if<SincForm>(&form))
    return sinc_value(*s, wf.representation(), u);
  if (const auto* c = std::get_if<ChirpedGaussianForm>(&form)) {
    const double d = u - c->center;
    return c->amplitude * std::exp(-d * d / (4.0 * c->a));
  }
  if (const auto* gr = std::get_if<GridForm>(&form)) {
    const double pos = (u - gr->origin) / gr->step;
    const double last = static_cast<double>(gr->samples.size() - 1);
    if (pos < 0.0 || pos > last) return 0.0;
    const auto j = static_cast<std::size_t>(pos);
    if (j + 1 >= gr->samples.size()) return gr->samples.back();
    const double frac = pos - static_cast<double>(j);
    return gr->samples[j] * (1.0 - frac) + gr->samples[j + 1] * frac;
  }
  if (const auto* sp = std::get_if<SuperpositionForm>(&form)) {
    complexd sum = 0.0;
    for (const auto& p : sp->parts) sum += p.weight * (*p.wf)(u);
    return sum;
  }
  const auto& ev = std::get<EvolvedForm>(form);
  if (wf.representation() == Representation::position)
    return evolved_value_position(*ev.source, ev.time, u);
  // momentum side of the evolved state: chirped source spectrum
  const complexd chirp = std::exp(complexd(0.0, -0.5 * u * u * ev.time));
  return chirp * evaluate(fourier_transform(*ev.source), u);
}

namespace {

complexd evolved_value_position(const Wavefunction& source, double t, double x) {
  const auto& form = source.form();
  if (const auto* g = std::get_if<GaussianForm>(&form)) {
    ChirpedGaussianForm e = evolve_chirped(as_chirped(*g), t);
    const double d = x - e.center;
    return e.amplitude * std::exp(-d * d / (4.0 * e.a));
  }
  if (const auto* c = std::get_if<ChirpedGaussianForm>(&form)) {
    ChirpedGaussianForm e = evolve_chirped(*c, t);
    const double d = x - e.center;
    return e.amplitude * std::exp(-d * d / (4.0 * e.a));
  }
  if (const auto* r = std::get_if<RectangleForm>(&form)) {
    // free propagator over the compact support
    const complexd pref = 1.0 / std::sqrt(complexd(0.0, kTwoPi * t));
    const complexd val = integrate_complex(
        [&](double y) {
          const double d = x - y;
          return std::exp(complexd(0.0, d * d / (2.0 * t)));
        },
        r->center - 0.5 * r->width, r->center + 0.5 * r->width, kEvolvedSpec);
    return pref * r->amplitude * val;
  }
  if (const auto* s = std::get_if<SincForm>(&form)) {
    // spectrum of a position sinc is the rectangle it came from
    return integrate_complex(
               [&](double p) {
                 return std::exp(complexd(0.0, -0.5 * p * p * t + p * x));
               },
               s->center - 0.5 * s->width, s->center + 0.5 * s->width,
               kEvolvedSpec) *
           s->amplitude / std::sqrt(kTwoPi);
  }
  throw std::logic_error("EvolvedForm: unsupported source form");
}

double grid_norm_squared(const GridForm& g) {
  double sum = 0.0;
  for (const auto& s : g.samples) sum += std::norm(s);
  sum -= 0.5 * (std::norm(g.samples.front()) + std::norm(g.samples.back()));
  return sum * g.step;
}

struct ComplexGaussian {
  complexd alpha;  // exp(-alpha (x - c)^2)
  double center;
  complexd amplitude;
};

std::optional<ComplexGaussian> as_complex_gaussian(const Wavefunction& wf) {
  if (const auto* g = std::get_if<GaussianForm>(&wf.form()))
    return ComplexGaussian{complexd(1.0 / (4.0 * g->sigma * g->sigma), 0.0),
                           g->center, g->amplitude};
  if (const auto* c = std::get_if<ChirpedGaussianForm>(&wf.form()))
    return ComplexGaussian{1.0 / (4.0 * c->a), c->center, c->amplitude};
  return std::nullopt;
}

// <f|g> for two (possibly chirped) Gaussians, any centers.
complexd gaussian_pair_inner(const ComplexGaussian& f, const ComplexGaussian& g) {
  const complexd g1 = std::conj(f.alpha);
  const complexd g2 = g.alpha;
  const double dc = f.center - g.center;
  return std::conj(f.amplitude) * g.amplitude * std::sqrt(M_PI / (g1 + g2)) *
         std::exp(-g1 * g2 * dc * dc / (g1 + g2));
}

void collect_discontinuities(const Wavefunction& wf, std::vector<double>& out) {
  const auto& form = wf.form();
  if (const auto* r = std::get_if<RectangleForm>(&form)) {
    out.push_back(r->center - 0.5 * r->width);
    out.push_back(r->center + 0.5 * r->width);
  } else if (const auto* g = std::get_if<GridForm>(&form)) {
    out.push_back(g->origin);
    out.push_back(g->origin + g->step * static_cast<double>(g->samples.size() - 1));
  } else if (const auto* sp = std::get_if<SuperpositionForm>(&form)) {
    for (const auto& p : sp->parts) collect_discontinuities(*p.wf, out);
  }
}

// Integrates f over [lo, hi] split at interior discontinuities.
template <class T, class F>
T integrate_split(const F& f, double lo, double hi,
                  const std::vector<double>& breaks, const QuadratureSpec& spec) {
  std::vector<double> pts{lo};
  for (double b : breaks)
    if (b > lo && b < hi) pts.push_back(b);
  pts.push_back(hi);
  std::sort(pts.begin(), pts.end());
  T total{};
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (pts[i + 1] - pts[i] < 1e-300) continue;
    if constexpr (std::is_same_v<T, double>)
      total += integrate(f, pts[i], pts[i + 1], spec);
    else
      total += integrate_complex(f, pts[i], pts[i + 1], spec);
  }
  return total;
}

std::optional<Interval> intersect(const std::optional<Interval>& a,
                                  const std::optional<Interval>& b) {
  if (!a) return b;
  if (!b) return a;
  const double lo = std::max(a->lo, b->lo);
  const double hi = std::min(a->hi, b->hi);
  if (!(lo < hi)) return Interval{0.0, 1e-300 + 1e-300};  // effectively empty
  return Interval{lo, hi};
}

complexd inner_product_impl(const Wavefunction& a, const Wavefunction& b,
                            const QuadratureSpec& spec, int depth);

complexd inner_product_quadrature(const Wavefunction& a, const Wavefunction& b,
                                  const QuadratureSpec& spec, int depth) {
  const auto sa = effective_support(a);
  const auto sb = effective_support(b);
  if (!sa && !sb) {
    if (depth > 0)
      throw std::invalid_argument(
          "inner_product: both operands unbounded in both representations");
    // both slowly decaying on this axis; the conjugate axis is bounded for
    // at least the sinc-like forms, so retry there
    return inner_product_impl(fourier_transform(a, spec),
                              fourier_transform(b, spec), spec, depth + 1);
  }
  const auto domain = intersect(sa, sb);
  if (domain->hi - domain->lo < 1e-250) return 0.0;
  std::vector<double> breaks;
  collect_discontinuities(a, breaks);
  collect_discontinuities(b, breaks);
  return integrate_split<complexd>(
      [&](double u) { return std::conj(a(u)) * b(u); }, domain->lo, domain->hi,
      breaks, spec);
}

complexd inner_product_impl(const Wavefunction& a, const Wavefunction& b,
                            const QuadratureSpec& spec, int depth) {
  if (a.representation() != b.representation())
    return inner_product_impl(a, fourier_transform(b, spec), spec, depth);

  // unitarity shortcut: equal-time evolved states overlap like their sources
  const auto* ea = std::get_if<EvolvedForm>(&a.form());
  const auto* eb = std::get_if<EvolvedForm>(&b.form());
  if (ea && eb && ea->time == eb->time)
    return inner_product_impl(*ea->source, *eb->source, spec, depth);

  if (const auto* sp = std::get_if<SuperpositionForm>(&a.form())) {
    complexd sum = 0.0;
    for (const auto& p : sp->parts)
      sum += std::conj(p.weight) * inner_product_impl(*p.wf, b, spec, depth);
    return sum;
  }
  if (const auto* sp = std::get_if<SuperpositionForm>(&b.form())) {
    complexd sum = 0.0;
    for (const auto& p : sp->parts)
      sum += p.weight * inner_product_impl(a, *p.wf, spec, depth);
    return sum;
  }

  const auto ga = as_complex_gaussian(a);
  const auto gb = as_complex_gaussian(b);
  if (ga && gb) return gaussian_pair_inner(*ga, *gb);

  const auto* ra = std::get_if<RectangleForm>(&a.form());
  const auto* rb = std::get_if<RectangleForm>(&b.form());
  if (ra && rb) {
    const double lo = std::max(ra->center - 0.5 * ra->width,
                               rb->center - 0.5 * rb->width);
    const double hi = std::min(ra->center + 0.5 * ra->width,
                               rb->center + 0.5 * rb->width);
    if (hi <= lo) return 0.0;
    return std::conj(ra->amplitude) * rb->amplitude * (hi - lo);
  }

  return inner_product_quadrature(a, b, spec, depth);
}

}  // namespace

std::optional<Interval> effective_support(const Wavefunction& wf) {
  const auto& form = wf.form();
  if (const auto* g = std::get_if<GaussianForm>(&form)) {
    const double r = kSupportSigmas * g->sigma;
    return Interval{g->center - r, g->center + r};
  }
  if (const auto* r = std::get_if<RectangleForm>(&form))
    return Interval{r->center - 0.5 * r->width, r->center + 0.5 * r->width};
  if (std::get_if<SincForm>(&form)) return std::nullopt;
  if (const auto* c = std::get_if<ChirpedGaussianForm>(&form)) {
    const double r = kSupportSigmas * chirped_sigma(*c);
    return Interval{c->center - r, c->center + r};
  }
  if (const auto* gr = std::get_if<GridForm>(&form))
    return Interval{gr->origin,
                    gr->origin + gr->step * static_cast<double>(gr->samples.size() - 1)};
  if (const auto* sp = std::get_if<SuperpositionForm>(&form)) {
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (const auto& p : sp->parts) {
      const auto s = effective_support(*p.wf);
      if (!s) return std::nullopt;
      lo = first ? s->lo : std::min(lo, s->lo);
      hi = first ? s->hi : std::max(hi, s->hi);
      first = false;
    }
    return Interval{lo, hi};
  }
  return std::nullopt;  // EvolvedForm
}

std::vector<double> discontinuities(const Wavefunction& wf) {
  std::vector<double> out;
  collect_discontinuities(wf, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double norm_squared(const Wavefunction& wf, const QuadratureSpec& spec) {
  const auto& form = wf.form();
  if (const auto* g = std::get_if<GaussianForm>(&form))
    return std::norm(g->amplitude) * g->sigma * std::sqrt(kTwoPi);
  if (const auto* r = std::get_if<RectangleForm>(&form))
    return std::norm(r->amplitude) * r->width;
  if (const auto* s = std::get_if<SincForm>(&form))
    return std::norm(s->amplitude) * s->width;  // Parseval with the source rectangle
  if (const auto* c = std::get_if<ChirpedGaussianForm>(&form))
    return std::norm(c->amplitude) * chirped_sigma(*c) * std::sqrt(kTwoPi);
  if (const auto* gr = std::get_if<GridForm>(&form)) return grid_norm_squared(*gr);
  if (const auto* sp = std::get_if<SuperpositionForm>(&form)) {
    double sum = 0.0;
    for (std::size_t i = 0; i < sp->parts.size(); ++i) {
      sum += std::norm(sp->parts[i].weight) * norm_squared(*sp->parts[i].wf, spec);
      for (std::size_t j = i + 1; j < sp->parts.size(); ++j) {
        const complexd cross =
            std::conj(sp->parts[i].weight) * sp->parts[j].weight *
            inner_product(*sp->parts[i].wf, *sp->parts[j].wf, spec);
        sum += 2.0 * cross.real();
      }
    }
    return sum;
  }
  return norm_squared(*std::get<EvolvedForm>(form).source, spec);  // unitary
}

Wavefunction scaled(const Wavefunction& wf, complexd factor) {
  const auto& form = wf.form();
  if (const auto* g = std::get_if<GaussianForm>(&form))
    return {wf.representation(), GaussianForm{g->sigma, g->center, g->amplitude * factor}};
  if (const auto* r = std::get_if<RectangleForm>(&form))
    return {wf.representation(), RectangleForm{r->width, r->center, r->amplitude * factor}};
  if (const auto* s = std::get_if<SincForm>(&form))
    return {wf.representation(), SincForm{s->width, s->center, s->amplitude * factor}};
  if (const auto* c = std::get_if<ChirpedGaussianForm>(&form))
    return {wf.representation(), ChirpedGaussianForm{c->a, c->center, c->amplitude * factor}};
  if (const auto* gr = std::get_if<GridForm>(&form)) {
    GridForm out = *gr;
    for (auto& v : out.samples) v *= factor;
    return {wf.representation(), std::move(out)};
  }
  if (const auto* sp = std::get_if<SuperpositionForm>(&form)) {
    SuperpositionForm out = *sp;
    for (auto& p : out.parts) p.weight *= factor;
    return {wf.representation(), std::move(out)};
  }
  // scaling an evolved state scales its source
  const auto& ev = std::get<EvolvedForm>(form);
  return {wf.representation(),
          EvolvedForm{std::make_shared<const Wavefunction>(scaled(*ev.source, factor)),
                      ev.time}};
}

Wavefunction normalized(const Wavefunction& wf, const QuadratureSpec& spec) {
  const double n2 = norm_squared(wf, spec);
  if (!(n2 > 0.0))
    throw std::invalid_argument("normalized: wavefunction has zero norm");
  return scaled(wf, 1.0 / std::sqrt(n2));
}

complexd inner_product(const Wavefunction& a, const Wavefunction& b,
                       const QuadratureSpec& spec) {
  return inner_product_impl(a, b, spec, 0);
}

double interval_probability(const Wavefunction& wf, const Interval& iv,
                            const QuadratureSpec& spec) {
  double lo = iv.lo, hi = iv.hi;
  if (const auto support = effective_support(wf)) {
    lo = std::max(lo, support->lo);
    hi = std::min(hi, support->hi);
    if (!(lo < hi)) return 0.0;
  }
  return integrate_split<double>([&](double u) { return std::norm(wf(u)); }, lo,
                                 hi, discontinuities(wf), spec);
}

double unit_gaussian_interval_probability(double sigma, double center,
                                          const Interval& iv) {
  const double s = sigma * std::sqrt(2.0);
  return 0.5 * (erf((iv.hi - center) / s) - erf((iv.lo - center) / s));
}

namespace {

Wavefunction grid_fourier(const Wavefunction& wf, const GridForm& g) {
  const std::size_t n = g.samples.size();
  if ((n & (n - 1)) != 0)
    throw std::invalid_argument("fourier_transform: grid size must be a power of two");
  const bool forward = wf.representation() == Representation::position;
  const double du = g.step;
  const double dv = kTwoPi / (du * static_cast<double>(n));
  const double v0 = -0.5 * static_cast<double>(n) * dv;

  std::vector<complexd> work(n);
  for (std::size_t j = 0; j < n; ++j)
    work[j] = (j % 2 == 0) ? g.samples[j] : -g.samples[j];
  fft(work, /*inverse=*/!forward);

  const double kernel_sign = forward ? -1.0 : 1.0;
  const double scale = du / std::sqrt(kTwoPi);
  for (std::size_t m = 0; m < n; ++m) {
    const double v = v0 + dv * static_cast<double>(m);
    work[m] *= scale * std::polar(1.0, kernel_sign * v * g.origin);
  }

  double total = 0.0, edge = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    const double mass = std::norm(work[m]);
    total += mass;
    if (m < n / 8 || m >= n - n / 8) edge += mass;
  }
  if (total > 0.0 && edge > kGridEdgeMass * total)
    throw ResolutionError(
        "fourier_transform: spectrum reaches the band edge; grid too coarse");

  const Representation out_rep = forward ? Representation::momentum
                                         : Representation::position;
  return Wavefunction::grid(std::move(work), dv, v0, out_rep);
}

}  // namespace

Wavefunction sampled_to_grid(const Wavefunction& wf, double lo, double hi,
                             int n) {
  if (!(hi > lo) || n < 2)
    throw std::invalid_argument("sampled_to_grid: bad box or sample count");
  const double step = (hi - lo) / static_cast<double>(n);
  std::vector<complexd> samples(n);
  for (int k = 0; k < n; ++k)
    samples[k] = wf(lo + step * static_cast<double>(k));
  return Wavefunction::grid(std::move(samples), step, lo, wf.representation());
}

Wavefunction fourier_transform(const Wavefunction& wf,
                               const QuadratureSpec& spec) {
  const Representation out_rep = wf.representation() == Representation::position
                                     ? Representation::momentum
                                     : Representation::position;
  const auto& form = wf.form();
  if (const auto* g = std::get_if<GaussianForm>(&form)) {
    if (g->center == 0.0) {
      const double sigma_out = 1.0 / (2.0 * g->sigma);
      return {out_rep, GaussianForm{sigma_out, 0.0,
                                    g->amplitude * std::sqrt(g->sigma / sigma_out)}};
    }
    // exact image carries a linear phase; fall through to the sampled path
  }
  if (const auto* c = std::get_if<ChirpedGaussianForm>(&form)) {
    if (c->center == 0.0)
      return {out_rep, ChirpedGaussianForm{0.25 / c->a, 0.0,
                                           c->amplitude * std::sqrt(2.0 * c->a)}};
  }
  if (const auto* r = std::get_if<RectangleForm>(&form))
    return {out_rep, SincForm{r->width, r->center, r->amplitude}};
  if (const auto* s = std::get_if<SincForm>(&form))
    return {out_rep, RectangleForm{s->width, s->center, s->amplitude}};
  if (const auto* gr = std::get_if<GridForm>(&form)) return grid_fourier(wf, *gr);
  if (const auto* sp = std::get_if<SuperpositionForm>(&form)) {
    SuperpositionForm out;
    out.parts.reserve(sp->parts.size());
    for (const auto& p : sp->parts)
      out.parts.push_back({p.weight, std::make_shared<const Wavefunction>(
                                         fourier_transform(*p.wf, spec))});
    return {out_rep, std::move(out)};
  }
  if (const auto* ev = std::get_if<EvolvedForm>(&form))
    return {out_rep, EvolvedForm{ev->source, ev->time}};

  // off-center analytic forms: sample wide enough that the conjugate axis is
  // finely resolved, then transform spectrally
  const auto support = effective_support(wf);
  if (!support)
    throw std::invalid_argument("fourier_transform: unsupported form");
  const double center = 0.5 * (support->lo + support->hi);
  const double half = 0.5 * (support->hi - support->lo) * 50.0;
  return fourier_transform(sampled_to_grid(wf, center - half, center + half, 1 << 16),
                           spec);
}

Wavefunction momentum_companion(const Wavefunction& phi_l, const Scenario& sc) {
  if (phi_l.representation() != Representation::position)
    throw std::invalid_argument(
        "momentum_companion: phi_L must be in position representation");
  const double r = sc.length / sc.bandwidth();  // L/B
  const double sr = std::sqrt(r);
  const auto& form = phi_l.form();
  if (const auto* g = std::get_if<GaussianForm>(&form))
    return {Representation::momentum,
            GaussianForm{g->sigma / r, g->center / r, g->amplitude * sr}};
  if (const auto* rc = std::get_if<RectangleForm>(&form))
    return {Representation::momentum,
            RectangleForm{rc->width / r, rc->center / r, rc->amplitude * sr}};
  if (const auto* s = std::get_if<SincForm>(&form))
    return {Representation::momentum,
            SincForm{s->width * r, -s->center * r, s->amplitude / sr}};
  if (const auto* c = std::get_if<ChirpedGaussianForm>(&form))
    return {Representation::momentum,
            ChirpedGaussianForm{c->a / (r * r), c->center / r, c->amplitude * sr}};
  if (const auto* gr = std::get_if<GridForm>(&form)) {
    GridForm out = *gr;
    for (auto& v : out.samples) v *= sr;
    out.step = gr->step / r;
    out.origin = gr->origin / r;
    return {Representation::momentum, std::move(out)};
  }
  if (const auto* sp = std::get_if<SuperpositionForm>(&form)) {
    SuperpositionForm out;
    out.parts.reserve(sp->parts.size());
    for (const auto& p : sp->parts)
      out.parts.push_back({p.weight, std::make_shared<const Wavefunction>(
                                         momentum_companion(*p.wf, sc))});
    return {Representation::momentum, std::move(out)};
  }
  throw std::invalid_argument("momentum_companion: unsupported source form");
}

// --- CSV -------------------------------------------------------------------

void write_grid_csv(const Wavefunction& wf, std::ostream& os) {
  const auto* g = std::get_if<GridForm>(&wf.form());
  if (!g) throw std::invalid_argument("write_grid_csv: GridForm required");
  os << (wf.representation() == Representation::position ? "x,re,im\n"
                                                         : "p,re,im\n");
  for (std::size_t k = 0; k < g->samples.size(); ++k) {
    const double u = g->origin + g->step * static_cast<double>(k);
    os << format_sig9(u) << ',' << format_sig9(g->samples[k].real()) << ','
       << format_sig9(g->samples[k].imag()) << '\n';
  }
}

void write_grid_csv(const Wavefunction& wf, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_grid_csv: cannot open " + path);
  write_grid_csv(wf, os);
}

Wavefunction read_grid_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line))
    throw std::invalid_argument("read_grid_csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  Representation rep;
  if (line == "x,re,im")
    rep = Representation::position;
  else if (line == "p,re,im")
    rep = Representation::momentum;
  else
    throw std::invalid_argument("read_grid_csv: unrecognized header: " + line);

  std::vector<double> axis;
  std::vector<complexd> samples;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    double vals[3];
    for (int i = 0; i < 3; ++i) {
      if (!std::getline(row, field, ','))
        throw std::invalid_argument("read_grid_csv: short row: " + line);
      vals[i] = std::stod(field);
    }
    axis.push_back(vals[0]);
    samples.emplace_back(vals[1], vals[2]);
  }
  if (axis.size() < 2)
    throw std::invalid_argument("read_grid_csv: needs at least two rows");
  const double step = axis[1] - axis[0];
  if (!(step > 0.0))
    throw std::invalid_argument("read_grid_csv: axis must be increasing");
  for (std::size_t k = 0; k < axis.size(); ++k) {
    const double expected = axis[0] + step * static_cast<double>(k);
    if (std::abs(axis[k] - expected) > 1e-9 * std::max(1.0, std::abs(expected)))
      throw std::invalid_argument("read_grid_csv: non-uniform step");
  }
  return Wavefunction::grid(std::move(samples), step, axis[0], rep);
}

Wavefunction read_grid_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("read_grid_csv: cannot open " + path);
  return read_grid_csv(is);
}

}  // namespace pmint
