#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "hrrembed/error.hpp"
#include "hrrembed/fft.hpp"
#include "hrrembed/hrr.hpp"
#include "hrrembed/random.hpp"

using namespace hrrembed;

namespace {

// Straight from the definition, kept independent of the library kernels.
DenseVector reference_convolve(const DenseVector& a, const DenseVector& b) {
  const std::size_t n = a.size();
  std::vector<double> t(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) t[j] += a[k] * b[(j + n - k) % n];
  }
  return DenseVector(std::move(t));
}

DenseVector reference_correlate(const DenseVector& a, const DenseVector& t) {
  const std::size_t n = a.size();
  std::vector<double> y(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) y[j] += a[k] * t[(k + j) % n];
  }
  return DenseVector(std::move(y));
}

double max_abs(const DenseVector& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double relative_error(const DenseVector& got, const DenseVector& want) {
  return max_abs(got - want) / std::max(max_abs(want), 1e-300);
}

}  // namespace

TEST(Convolution, HandComputedCase) {
  const DenseVector t = circular_convolve({1, 2, 3}, {4, 5, 6});
  EXPECT_EQ(t, (DenseVector{31, 31, 28}));
  EXPECT_LT(relative_error(circular_convolve_fft({1, 2, 3}, {4, 5, 6}), t), 1e-15);
}

TEST(Convolution, DirectMatchesDefinition) {
  RandomSource r(3);
  for (std::size_t n : {1u, 2u, 7u, 64u, 300u}) {
    const auto a = random_vector(r, n), b = random_vector(r, n);
    EXPECT_LT(relative_error(circular_convolve(a, b), reference_convolve(a, b)), 1e-12) << n;
  }
}

TEST(Convolution, FftMatchesDirectAcrossLengths) {
  RandomSource r(4);
  for (std::size_t n = 1; n <= 130; ++n) {
    const auto a = random_vector(r, n), b = random_vector(r, n);
    ConvolutionPath path;
    const auto fast = circular_convolve_fft(a, b, &path);
    EXPECT_LT(relative_error(fast, circular_convolve(a, b)), 1e-12) << n;
    EXPECT_EQ(path == ConvolutionPath::fft, FftPlan(n).fast()) << n;
  }
}

TEST(Convolution, LargePrimeFallsBackToDirect) {
  RandomSource r(5);
  const auto a = random_vector(r, 67), b = random_vector(r, 67);
  ConvolutionPath path = ConvolutionPath::fft;
  EXPECT_EQ(circular_convolve_fft(a, b, &path), circular_convolve(a, b));
  EXPECT_EQ(path, ConvolutionPath::direct);
  (void)circular_correlate_fft(a, b, &path);
  EXPECT_EQ(path, ConvolutionPath::direct);
}

TEST(Convolution, CommutativeBitwise) {
  RandomSource r(6);
  for (std::size_t n : {3u, 67u, 300u, 1000u}) {
    const auto a = random_vector(r, n), b = random_vector(r, n);
    EXPECT_EQ(circular_convolve(a, b), circular_convolve(b, a));
    EXPECT_EQ(circular_convolve_fft(a, b), circular_convolve_fft(b, a));
  }
}

TEST(Convolution, DeltaIsIdentity) {
  RandomSource r(7);
  const DenseVector delta([] {
    std::vector<double> d(300, 0.0);
    d[0] = 1.0;
    return d;
  }());
  const auto a = random_vector(r, 300);
  EXPECT_EQ(circular_convolve(a, delta), a);
  EXPECT_LT(relative_error(circular_convolve_fft(a, delta), a), 1e-13);
}

TEST(Convolution, LengthMismatchThrows) {
  EXPECT_THROW((void)circular_convolve({1, 2}, {1, 2, 3}), DimensionMismatch);
  EXPECT_THROW((void)circular_convolve_fft({1, 2}, {1, 2, 3}), DimensionMismatch);
  EXPECT_THROW((void)circular_correlate({1, 2}, {1, 2, 3}), DimensionMismatch);
}

TEST(Correlation, MatchesDefinition) {
  RandomSource r(8);
  for (std::size_t n : {1u, 3u, 67u, 300u}) {
    const auto a = random_vector(r, n), t = random_vector(r, n);
    const auto ref = reference_correlate(a, t);
    EXPECT_LT(relative_error(circular_correlate(a, t), ref), 1e-12) << n;
    EXPECT_LT(relative_error(circular_correlate_fft(a, t), ref), 1e-12) << n;
  }
}

TEST(Correlation, ApproximatelyInvertsBinding) {
  // E[cos(a # (a * x), x)] is about 1/sqrt(2) for N(0, 1/n) vectors.
  RandomSource r(9);
  double total = 0.0;
  const int trials = 200;
  for (int i = 0; i < trials; ++i) {
    const auto a = random_vector(r, 300), x = random_vector(r, 300);
    total += cosine_similarity(circular_correlate_fft(a, circular_convolve_fft(a, x)), x);
  }
  EXPECT_NEAR(total / trials, 1.0 / std::sqrt(2.0), 0.05);
}

TEST(Superpose, AveragesAndValidates) {
  const std::vector<DenseVector> v{{1, 2}, {3, 4}, {5, 6}};
  EXPECT_EQ(superpose(v, 3), (DenseVector{3, 4}));
  EXPECT_EQ(superpose(v, 1), (DenseVector{9, 12}));
  EXPECT_THROW((void)superpose(v, 0), Error);
  EXPECT_THROW((void)superpose(std::vector<DenseVector>{}, 1), Error);
  const std::vector<DenseVector> bad{{1, 2}, {3}};
  EXPECT_THROW((void)superpose(bad, 2), DimensionMismatch);
}

TEST(Cosine, BasicsAndDegenerate) {
  EXPECT_DOUBLE_EQ(cosine_similarity({1, 0}, {0, 1}), 0.0);
  EXPECT_DOUBLE_EQ(cosine_similarity({1, 1}, {2, 2}), 1.0);
  EXPECT_DOUBLE_EQ(cosine_similarity({1, 1}, {-3, -3}), -1.0);
  EXPECT_THROW((void)cosine_similarity({0, 0}, {1, 1}), DegenerateVector);
  RandomSource r(10);
  for (int i = 0; i < 100; ++i) {
    const auto a = random_vector(r, 5);
    const double c = cosine_similarity(a, a * 3.7);
    EXPECT_LE(c, 1.0);
    EXPECT_GE(c, -1.0);
  }
}
