#include "hrrembed/fft.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <numbers>
#include <unordered_map>

#include "hrrembed/error.hpp"

namespace hrrembed {
namespace {

using cplx = std::complex<double>;

std::vector<std::size_t> factorize(std::size_t n) {
  std::vector<std::size_t> factors;
  while (n % 4 == 0) {
    factors.push_back(4);
    n /= 4;
  }
  if (n % 2 == 0) {
    factors.push_back(2);
    n /= 2;
  }
  for (std::size_t p = 3; p * p <= n; p += 2) {
    while (n % p == 0) {
      factors.push_back(p);
      n /= p;
    }
  }
  if (n > 1) factors.push_back(n);
  return factors;
}

// Multiplies by -i (forward) or +i (inverse).
inline cplx rotate_quarter(cplx z, bool inverse) noexcept {
  return inverse ? cplx(-z.imag(), z.real()) : cplx(z.imag(), -z.real());
}

// z * w, or z * conj(w) for the inverse direction. Plain arithmetic: the
// library operator* carries inf/nan recovery we never need here.
inline cplx mul(cplx z, cplx w, bool inverse) noexcept {
  const double wi = inverse ? -w.imag() : w.imag();
  return {z.real() * w.real() - z.imag() * wi, z.real() * wi + z.imag() * w.real()};
}

cplx unit_root(std::size_t k, std::size_t n) {
  const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

FftPlan::FftPlan(std::size_t n) : n_(n), factors_(factorize(n)) {
  if (n == 0) throw Error("FftPlan: length must be positive");
  for (std::size_t f : factors_) {
    if (f > kMaxRadix) fast_ = false;
  }
  if (!fast_) return;
  std::size_t len = n;
  for (std::size_t p : factors_) {
    Stage stage;
    stage.radix = p;
    stage.span = len / p;
    stage.twiddles.reserve(stage.span * (p - 1));
    for (std::size_t k = 0; k < stage.span; ++k) {
      for (std::size_t q = 1; q < p; ++q) stage.twiddles.push_back(unit_root((q * k) % len, len));
    }
    if (p > 5) {
      for (std::size_t j = 0; j < p; ++j) stage.radix_roots.push_back(unit_root(j, p));
    }
    stages_.push_back(std::move(stage));
    len /= p;
  }
}

void FftPlan::forward(std::span<cplx> data) const { transform(data, false); }

void FftPlan::inverse(std::span<cplx> data) const { transform(data, true); }

void FftPlan::transform(std::span<cplx> data, bool inverse) const {
  if (data.size() != n_) throw DimensionMismatch(n_, data.size(), "FftPlan");
  if (!fast_) throw Error("FftPlan: length " + std::to_string(n_) + " has an unsupported prime factor");
  if (n_ == 1) return;
  thread_local std::vector<cplx> scratch;
  scratch.resize(n_);
  std::copy(data.begin(), data.end(), scratch.begin());
  recurse(scratch.data(), 1, data.data(), 0, inverse);
}

// Decimation in time. Sub-transform q of length len/p reads in[q*stride + j*p*stride]
// and writes out[q*m .. q*m + m); the butterfly pass then combines the p outputs.
void FftPlan::recurse(const cplx* in, std::size_t stride, cplx* out, std::size_t stage_index,
                      bool inverse) const {
  const Stage& stage = stages_[stage_index];
  const std::size_t p = stage.radix;
  const std::size_t m = stage.span;
  if (m == 1) {
    for (std::size_t q = 0; q < p; ++q) out[q] = in[q * stride];
  } else {
    for (std::size_t q = 0; q < p; ++q) {
      recurse(in + q * stride, stride * p, out + q * m, stage_index + 1, inverse);
    }
  }

  const cplx* tw = stage.twiddles.data();
  switch (p) {
    case 2:
      for (std::size_t k = 0; k < m; ++k) {
        const cplx t0 = out[k];
        const cplx t1 = mul(out[m + k], tw[k], inverse);
        out[k] = t0 + t1;
        out[m + k] = t0 - t1;
      }
      break;
    case 4:
      for (std::size_t k = 0; k < m; ++k) {
        const cplx* w = tw + 3 * k;
        const cplx t0 = out[k];
        const cplx t1 = mul(out[m + k], w[0], inverse);
        const cplx t2 = mul(out[2 * m + k], w[1], inverse);
        const cplx t3 = mul(out[3 * m + k], w[2], inverse);
        const cplx s02 = t0 + t2;
        const cplx d02 = t0 - t2;
        const cplx s13 = t1 + t3;
        const cplx d13 = rotate_quarter(t1 - t3, inverse);
        out[k] = s02 + s13;
        out[m + k] = d02 + d13;
        out[2 * m + k] = s02 - s13;
        out[3 * m + k] = d02 - d13;
      }
      break;
    case 3: {
      const double half_sqrt3 = (inverse ? 0.5 : -0.5) * std::numbers::sqrt3;
      for (std::size_t k = 0; k < m; ++k) {
        const cplx* w = tw + 2 * k;
        const cplx t0 = out[k];
        const cplx t1 = mul(out[m + k], w[0], inverse);
        const cplx t2 = mul(out[2 * m + k], w[1], inverse);
        const cplx sum = t1 + t2;
        const cplx diff = t1 - t2;
        const cplx mid = t0 - 0.5 * sum;
        const cplx rot(-half_sqrt3 * diff.imag(), half_sqrt3 * diff.real());
        out[k] = t0 + sum;
        out[m + k] = mid + rot;
        out[2 * m + k] = mid - rot;
      }
      break;
    }
    case 5: {
      const double c1 = std::cos(2.0 * std::numbers::pi / 5.0);
      const double c2 = std::cos(4.0 * std::numbers::pi / 5.0);
      const double sign = inverse ? 1.0 : -1.0;
      const double s1 = sign * std::sin(2.0 * std::numbers::pi / 5.0);
      const double s2 = sign * std::sin(4.0 * std::numbers::pi / 5.0);
      for (std::size_t k = 0; k < m; ++k) {
        const cplx* w = tw + 4 * k;
        const cplx t0 = out[k];
        const cplx t1 = mul(out[m + k], w[0], inverse);
        const cplx t2 = mul(out[2 * m + k], w[1], inverse);
        const cplx t3 = mul(out[3 * m + k], w[2], inverse);
        const cplx t4 = mul(out[4 * m + k], w[3], inverse);
        const cplx a14 = t1 + t4;
        const cplx b14 = t1 - t4;
        const cplx a23 = t2 + t3;
        const cplx b23 = t2 - t3;
        const cplx m1 = t0 + c1 * a14 + c2 * a23;
        const cplx m2 = t0 + c2 * a14 + c1 * a23;
        // i * (s1 * b14 + s2 * b23) and i * (s2 * b14 - s1 * b23)
        const cplx n1 = s1 * b14 + s2 * b23;
        const cplx n2 = s2 * b14 - s1 * b23;
        const cplx r1(-n1.imag(), n1.real());
        const cplx r2(-n2.imag(), n2.real());
        out[k] = t0 + a14 + a23;
        out[m + k] = m1 + r1;
        out[4 * m + k] = m1 - r1;
        out[2 * m + k] = m2 + r2;
        out[3 * m + k] = m2 - r2;
      }
      break;
    }
    default: {
      // Generic odd prime: direct p-point DFT per column.
      std::array<cplx, kMaxRadix> t{};
      const cplx* roots = stage.radix_roots.data();
      for (std::size_t k = 0; k < m; ++k) {
        const cplx* w = tw + (p - 1) * k;
        t[0] = out[k];
        for (std::size_t q = 1; q < p; ++q) t[q] = mul(out[q * m + k], w[q - 1], inverse);
        for (std::size_t r = 0; r < p; ++r) {
          cplx acc = t[0];
          std::size_t j = 0;
          for (std::size_t q = 1; q < p; ++q) {
            j += r;
            if (j >= p) j -= p;
            acc += mul(t[q], roots[j], inverse);
          }
          out[r * m + k] = acc;
        }
      }
      break;
    }
  }
}

const FftPlan& cached_fft_plan(std::size_t n) {
  thread_local std::unordered_map<std::size_t, std::unique_ptr<FftPlan>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<FftPlan>(n);
  return *slot;
}

}  // namespace hrrembed
