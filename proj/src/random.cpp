#include "hrrembed/random.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "hrrembed/error.hpp"

namespace hrrembed {

double RandomSource::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t RandomSource::uniform_index(std::uint64_t bound) {
  if (bound == 0) throw Error("uniform_index: bound must be positive");
  // Largest multiple of bound representable in 64 bits; draws at or above it are rejected.
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t draw;
  do {
    draw = engine_();
  } while (draw >= limit);
  return draw % bound;
}

double RandomSource::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double scale = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * scale;
  has_spare_ = true;
  return u * scale;
}

DenseVector random_vector(RandomSource& source, std::size_t n) {
  if (n == 0) throw Error("random_vector: n must be positive");
  const double sd = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<double> elements(n);
  for (double& x : elements) x = sd * source.normal();
  return DenseVector(std::move(elements));
}

}  // namespace hrrembed
