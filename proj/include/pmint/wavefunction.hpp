#pragma once

#include <complex>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pmint/numerics.hpp"
#include "pmint/scenario.hpp"

namespace pmint {

using complexd = std::complex<double>;

enum class Representation { position, momentum };

// Closed interval on the representation axis.
struct Interval {
  double lo, hi;

  Interval(double lo_, double hi_);
  double width() const { return hi - lo; }
  static Interval centered(double width) { return {-0.5 * width, 0.5 * width}; }
};

// --- wavefunction forms ----------------------------------------------------

// amplitude * exp(-(u - center)^2 / (4 sigma^2)); unit norm when
// amplitude = (2 pi sigma^2)^(-1/4).
struct GaussianForm {
  double sigma;
  double center;
  complexd amplitude;
};

// amplitude inside |u - center| <= width/2, zero outside; unit norm when
// amplitude = 1/sqrt(width).
struct RectangleForm {
  double width;
  double center;
  complexd amplitude;
};

// Fourier image of a rectangle of the same width/center/amplitude living in
// the conjugate representation:
//   value(u) = amplitude * width * sinc(u width / 2) * exp(-i s u center) / sqrt(2 pi)
// with s = +1 when this form is in momentum representation and s = -1 in
// position representation.
struct SincForm {
  double width;
  double center;
  complexd amplitude;
};

// amplitude * exp(-(u - center)^2 / (4 a)), Re(a) > 0. Closed under both the
// Fourier transform and free evolution; a real GaussianForm is the a = sigma^2
// special case.
struct ChirpedGaussianForm {
  complexd a;
  double center;
  complexd amplitude;
};

// Uniformly sampled amplitudes; linear interpolation between samples, zero
// outside the sampled span.
struct GridForm {
  std::vector<complexd> samples;
  double step;
  double origin;
};

class Wavefunction;

struct WeightedPart {
  complexd weight;
  std::shared_ptr<const Wavefunction> wf;
};

// Linear combination of parts sharing one representation.
struct SuperpositionForm {
  std::vector<WeightedPart> parts;
};

// Free evolution of an analytic source (position representation) by `time`,
// evaluated on demand through chirped quadrature. In position representation
// the value is the free-propagator integral over the source; in momentum
// representation it is exp(-i p^2 t / 2) times the source spectrum.
struct EvolvedForm {
  std::shared_ptr<const Wavefunction> source;  // position representation
  double time;
};

// --- wavefunction ----------------------------------------------------------

class Wavefunction {
 public:
  using Form = std::variant<GaussianForm, RectangleForm, SincForm,
                            ChirpedGaussianForm, GridForm, SuperpositionForm,
                            EvolvedForm>;

  Wavefunction(Representation rep, Form form);

  static Wavefunction gaussian(double sigma, double center, complexd amplitude,
                               Representation rep = Representation::position);
  // amplitude (2 pi sigma^2)^(-1/4), centered
  static Wavefunction unit_gaussian(double sigma,
                                    Representation rep = Representation::position);
  static Wavefunction rectangle(double width, double center, complexd amplitude,
                                Representation rep = Representation::position);
  // amplitude 1/sqrt(width), centered
  static Wavefunction unit_rectangle(double width,
                                     Representation rep = Representation::position);
  static Wavefunction grid(std::vector<complexd> samples, double step,
                           double origin,
                           Representation rep = Representation::position);
  static Wavefunction superposition(
      std::vector<std::pair<complexd, Wavefunction>> parts);

  Representation representation() const { return rep_; }
  const Form& form() const { return *form_; }

  complexd operator()(double u) const;

 private:
  Representation rep_;
  std::shared_ptr<const Form> form_;
};

// --- operations ------------------------------------------------------------

// Amplitude <u|wf> in the wavefunction's own representation.
complexd evaluate(const Wavefunction& wf, double u);

// Integral of |wf|^2 over the whole axis; closed form for single analytic
// forms, pairwise inner products for superpositions, quadrature otherwise.
double norm_squared(const Wavefunction& wf, const QuadratureSpec& spec = {});

// wf scaled to unit norm.
Wavefunction normalized(const Wavefunction& wf, const QuadratureSpec& spec = {});

// wf multiplied by a complex factor.
Wavefunction scaled(const Wavefunction& wf, complexd factor);

// Maps position representation to momentum representation with kernel
// exp(-i p x)/sqrt(2 pi), and back with the conjugate kernel. Analytic forms
// map in closed form, grids through the spectral transform. Throws
// ResolutionError when a grid's spectrum reaches the band edge.
Wavefunction fourier_transform(const Wavefunction& wf,
                               const QuadratureSpec& spec = {});

// <a|b> = integral of conj(a) * b. If representations differ, b is
// transformed into a's representation first.
complexd inner_product(const Wavefunction& a, const Wavefunction& b,
                       const QuadratureSpec& spec = {});

// Integral of |wf(u)|^2 over the interval, by adaptive quadrature.
double interval_probability(const Wavefunction& wf, const Interval& iv,
                            const QuadratureSpec& spec = {});

// Closed-form interval probability of a unit-norm Gaussian; the quadrature
// path is validated against this in tests.
double unit_gaussian_interval_probability(double sigma, double center,
                                          const Interval& iv);

// The momentum-localized companion with the same waveform shape:
// <p|phi_B> = sqrt(L/B) <x = (L/B) p|phi_L>, returned in momentum
// representation. phi_L must be in position representation.
Wavefunction momentum_companion(const Wavefunction& phi_l, const Scenario& sc);

// Interval outside which the amplitude is below ~1e-18 of its peak; nullopt
// for slowly decaying forms (sinc tails, evolved states).
std::optional<Interval> effective_support(const Wavefunction& wf);

// Axis points where the amplitude is discontinuous (rectangle edges, grid
// span boundaries); quadrature over an interval is split at these.
std::vector<double> discontinuities(const Wavefunction& wf);

// Samples wf on n uniform points over [lo, hi].
Wavefunction sampled_to_grid(const Wavefunction& wf, double lo, double hi,
                             int n);

// --- grid CSV interchange ---------------------------------------------------
// Header "x,re,im" (position) or "p,re,im" (momentum); one row per sample;
// import requires a uniform step.

void write_grid_csv(const Wavefunction& wf, std::ostream& os);
void write_grid_csv(const Wavefunction& wf, const std::string& path);
Wavefunction read_grid_csv(std::istream& is);
Wavefunction read_grid_csv(const std::string& path);

}  // namespace pmint
