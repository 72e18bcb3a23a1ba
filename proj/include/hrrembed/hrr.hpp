#pragma once

#include <span>

#include "hrrembed/dense_vector.hpp"

namespace hrrembed {

// Which kernel produced a convolution or correlation result.
enum class ConvolutionPath { fft, direct };

// Circular convolution by direct summation, t_j = sum_k a_k * b_{(j-k) mod n}.
// Terms k and (j-k) are summed as a pair, so swapping the operands gives a
// bitwise identical result.
[[nodiscard]] DenseVector circular_convolve(const DenseVector& a, const DenseVector& b);

// Circular convolution through the convolution theorem. Both real inputs are
// packed into one complex transform. Lengths the FFT plan cannot handle fall
// back to circular_convolve; `path` (optional) reports which one ran.
[[nodiscard]] DenseVector circular_convolve_fft(const DenseVector& a, const DenseVector& b,
                                                ConvolutionPath* path = nullptr);

// Circular correlation, y_j = sum_k a_k * t_{(k+j) mod n}. Approximate inverse of
// convolution: correlate(a, convolve(a, x)) ~ x when a ~ N(0, 1/n).
[[nodiscard]] DenseVector circular_correlate(const DenseVector& a, const DenseVector& t);
[[nodiscard]] DenseVector circular_correlate_fft(const DenseVector& a, const DenseVector& t,
                                                 ConvolutionPath* path = nullptr);

// Element-wise sum divided by divisor. Throws on empty input, mismatched
// lengths or divisor == 0.
[[nodiscard]] DenseVector superpose(std::span<const DenseVector> vectors, unsigned divisor);

// dot(a, b) / (|a| |b|), clamped to [-1, 1]. Throws DegenerateVector on a zero-norm input.
[[nodiscard]] double cosine_similarity(const DenseVector& a, const DenseVector& b);

}  // namespace hrrembed
