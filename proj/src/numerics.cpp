#include "pmint/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <stdexcept>

#include "pmint/errors.hpp"

namespace pmint {

void QuadratureSpec::validate() const {
  if (!(abs_tolerance > 0.0) || !(rel_tolerance > 0.0))
    throw std::invalid_argument("QuadratureSpec: tolerances must be positive");
  if (max_subdivisions < 4)
    throw std::invalid_argument("QuadratureSpec: max_subdivisions must be >= 4");
}

namespace {

// (G7,K15) nodes and weights on [-1,1], positive half. Odd-indexed
// abscissae are the embedded 7-point Gauss nodes.
constexpr double kNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};
constexpr double kKronrodW[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kGaussW[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

double magnitude(double v) { return std::abs(v); }
double magnitude(std::complex<double> v) { return std::abs(v); }

template <class T, class F>
void gk15(const F& f, double a, double b, T& result, double& err) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  T fc = f(mid);
  T kronrod = kKronrodW[7] * fc;
  T gauss = kGaussW[3] * fc;
  for (int i = 0; i < 7; ++i) {
    T lo = f(mid - half * kNodes[i]);
    T hi = f(mid + half * kNodes[i]);
    kronrod += kKronrodW[i] * (lo + hi);
    if (i % 2 == 1) gauss += kGaussW[i / 2] * (lo + hi);
  }
  result = kronrod * half;
  err = magnitude((kronrod - gauss) * half);
}

template <class T>
struct Segment {
  double a, b;
  T value;
  double err;
  std::uint64_t seq;  // creation order, makes the heap order total
};

template <class T>
struct WorstFirst {
  bool operator()(const Segment<T>& x, const Segment<T>& y) const {
    if (x.err != y.err) return x.err < y.err;
    return x.seq > y.seq;
  }
};

template <class T, class F>
T adaptive(const F& f, double a, double b, const QuadratureSpec& spec) {
  spec.validate();
  if (!(a <= b)) throw std::invalid_argument("integrate: requires a <= b");
  if (a == b) return T{};

  std::priority_queue<Segment<T>, std::vector<Segment<T>>, WorstFirst<T>> heap;
  std::uint64_t seq = 0;

  T total{};
  double total_err = 0.0;
  {
    Segment<T> s{a, b, T{}, 0.0, seq++};
    gk15(f, a, b, s.value, s.err);
    total = s.value;
    total_err = s.err;
    heap.push(s);
  }

  while (total_err > std::max(spec.abs_tolerance,
                              spec.rel_tolerance * magnitude(total))) {
    if (static_cast<int>(heap.size()) >= spec.max_subdivisions) {
      throw AccuracyError("integrate: tolerance not reached within max_subdivisions",
                          std::complex<double>(total), total_err);
    }
    Segment<T> worst = heap.top();
    heap.pop();
    total -= worst.value;
    total_err -= worst.err;

    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // interval at floating-point resolution; keep its estimate as-is
      total += worst.value;
      total_err += worst.err;
      throw AccuracyError("integrate: interval subdivided to machine resolution",
                          std::complex<double>(total), total_err);
    }
    Segment<T> left{worst.a, mid, T{}, 0.0, seq++};
    Segment<T> right{mid, worst.b, T{}, 0.0, seq++};
    gk15(f, left.a, left.b, left.value, left.err);
    gk15(f, right.a, right.b, right.value, right.err);
    total += left.value + right.value;
    total_err += left.err + right.err;
    heap.push(left);
    heap.push(right);
  }
  return total;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec) {
  return adaptive<double>(f, a, b, spec);
}

std::complex<double> integrate_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    const QuadratureSpec& spec) {
  return adaptive<std::complex<double>>(f, a, b, spec);
}

double erf(double x) { return std::erf(x); }

void fft(std::vector<std::complex<double>>& data, bool inverse) {
  const std::size_t n = data.size();
  if (n == 0) return;
  if ((n & (n - 1)) != 0)
    throw std::invalid_argument("fft: size must be a power of two");

  // bit-reversal permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }

  const double sign = inverse ? 1.0 : -1.0;
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * M_PI / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        std::complex<double> u = data[i + k];
        std::complex<double> v = data[i + k + len / 2] * w;
        data[i + k] = u + v;
        data[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

}  // namespace pmint
