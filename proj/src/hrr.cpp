#include "hrrembed/hrr.hpp"

#include <algorithm>
#include <complex>
#include <vector>

#include "hrrembed/error.hpp"
#include "hrrembed/fft.hpp"

namespace hrrembed {
namespace {

using cplx = std::complex<double>;

// Spectra of two real vectors from a single complex transform of a + i*b.
void packed_spectra(const DenseVector& a, const DenseVector& b, const FftPlan& plan,
                    std::vector<cplx>& spec_a, std::vector<cplx>& spec_b) {
  const std::size_t n = a.size();
  std::vector<cplx> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = cplx(a[i], b[i]);
  plan.forward(z);
  spec_a.resize(n);
  spec_b.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const cplx zk = z[k];
    const cplx zr = std::conj(z[(n - k) % n]);
    spec_a[k] = 0.5 * (zk + zr);
    spec_b[k] = cplx(0.0, -0.5) * (zk - zr);
  }
}

DenseVector real_inverse(std::vector<cplx>& spectrum, const FftPlan& plan) {
  plan.inverse(spectrum);
  const double scale = 1.0 / static_cast<double>(spectrum.size());
  std::vector<double> out(spectrum.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = spectrum[i].real() * scale;
  return DenseVector(std::move(out));
}

void report(ConvolutionPath* path, ConvolutionPath value) {
  if (path != nullptr) *path = value;
}

}  // namespace

DenseVector circular_convolve(const DenseVector& a, const DenseVector& b) {
  require_same_size(a, b, "circular_convolve");
  const std::size_t n = a.size();
  std::vector<double> t(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t partner = (j + n - k) % n;
      if (partner < k) continue;
      if (partner == k) {
        acc += a[k] * b[k];
      } else {
        acc += a[k] * b[partner] + a[partner] * b[k];
      }
    }
    t[j] = acc;
  }
  return DenseVector(std::move(t));
}

DenseVector circular_convolve_fft(const DenseVector& a, const DenseVector& b, ConvolutionPath* path) {
  require_same_size(a, b, "circular_convolve_fft");
  const FftPlan& plan = cached_fft_plan(a.size());
  if (!plan.fast()) {
    report(path, ConvolutionPath::direct);
    return circular_convolve(a, b);
  }
  report(path, ConvolutionPath::fft);
  // Canonical operand order makes the packed transform symmetric in (a, b).
  const bool swap = std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  const DenseVector& first = swap ? b : a;
  const DenseVector& second = swap ? a : b;
  std::vector<cplx> spec_a, spec_b;
  packed_spectra(first, second, plan, spec_a, spec_b);
  for (std::size_t k = 0; k < spec_a.size(); ++k) spec_a[k] *= spec_b[k];
  return real_inverse(spec_a, plan);
}

DenseVector circular_correlate(const DenseVector& a, const DenseVector& t) {
  require_same_size(a, t, "circular_correlate");
  const std::size_t n = a.size();
  std::vector<double> y(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) acc += a[k] * t[(k + j) % n];
    y[j] = acc;
  }
  return DenseVector(std::move(y));
}

DenseVector circular_correlate_fft(const DenseVector& a, const DenseVector& t, ConvolutionPath* path) {
  require_same_size(a, t, "circular_correlate_fft");
  const FftPlan& plan = cached_fft_plan(a.size());
  if (!plan.fast()) {
    report(path, ConvolutionPath::direct);
    return circular_correlate(a, t);
  }
  report(path, ConvolutionPath::fft);
  std::vector<cplx> spec_a, spec_t;
  packed_spectra(a, t, plan, spec_a, spec_t);
  for (std::size_t k = 0; k < spec_a.size(); ++k) spec_a[k] = std::conj(spec_a[k]) * spec_t[k];
  return real_inverse(spec_a, plan);
}

DenseVector superpose(std::span<const DenseVector> vectors, unsigned divisor) {
  if (vectors.empty()) throw Error("superpose: no vectors");
  if (divisor == 0) throw Error("superpose: divisor must be at least 1");
  DenseVector sum = vectors.front();
  for (const DenseVector& v : vectors.subspan(1)) sum += v;
  sum /= static_cast<double>(divisor);
  return sum;
}

double cosine_similarity(const DenseVector& a, const DenseVector& b) {
  require_same_size(a, b, "cosine_similarity");
  const double na = norm(a);
  const double nb = norm(b);
  if (na == 0.0 || nb == 0.0) throw DegenerateVector("cosine_similarity: zero-norm vector");
  return std::clamp(dot(a, b) / (na * nb), -1.0, 1.0);
}

}  // namespace hrrembed
