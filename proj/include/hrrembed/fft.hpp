#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace hrrembed {

// Mixed-radix complex FFT for one transform length.
//
// The length is factored into radix-4, 2, 3 and 5 stages plus a generic
// odd-prime stage for any remaining prime factor up to kMaxRadix. Twiddles are
// tabulated per stage at construction. Lengths with a
// larger prime factor are not handled (fast() == false); callers fall back to
// direct summation. A plan is immutable after construction and can be shared
// between threads.
class FftPlan {
 public:
  static constexpr std::size_t kMaxRadix = 61;

  explicit FftPlan(std::size_t n);

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] bool fast() const noexcept { return fast_; }
  [[nodiscard]] const std::vector<std::size_t>& factors() const noexcept { return factors_; }

  // In-place unnormalized transforms: forward uses exp(-2*pi*i*jk/n), inverse
  // exp(+2*pi*i*jk/n). inverse(forward(x)) == n * x. Requires fast().
  void forward(std::span<std::complex<double>> data) const;
  void inverse(std::span<std::complex<double>> data) const;

 private:
  void transform(std::span<std::complex<double>> data, bool inverse) const;
  void recurse(const std::complex<double>* in, std::size_t stride, std::complex<double>* out,
               std::size_t stage, bool inverse) const;

  struct Stage {
    std::size_t radix = 0;
    std::size_t span = 0;  // len / radix
    // exp(-2*pi*i*q*k/len) at [k * (radix - 1) + q - 1], 1 <= q < radix, k < span
    std::vector<std::complex<double>> twiddles;
    // exp(-2*pi*i*j/radix), j < radix; generic stages only
    std::vector<std::complex<double>> radix_roots;
  };

  std::size_t n_;
  bool fast_ = true;
  std::vector<std::size_t> factors_;
  std::vector<Stage> stages_;
};

// Plan for length n from a per-thread cache.
[[nodiscard]] const FftPlan& cached_fft_plan(std::size_t n);

}  // namespace hrrembed
