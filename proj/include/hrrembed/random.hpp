#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "hrrembed/dense_vector.hpp"

namespace hrrembed {

// Seeded generator with a platform-independent output sequence.
//
// The engine is std::mt19937_64, whose output is fixed by the standard. The
// standard distributions are not (libstdc++, libc++ and MSVC differ), so the
// uniform and normal transforms are implemented here: uniforms take the top
// 53 bits of one engine word, normals use the Marsaglia polar method and cache
// the second variate of each accepted pair.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1).
  double uniform();
  // Uniform integer on [0, bound). bound > 0. Rejection sampling, no modulo bias.
  std::uint64_t uniform_index(std::uint64_t bound);
  // Standard normal N(0, 1).
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// n independent draws from N(0, 1/n). Advances the source.
[[nodiscard]] DenseVector random_vector(RandomSource& source, std::size_t n);

}  // namespace hrrembed
