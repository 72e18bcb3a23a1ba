#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace hrrembed {

// Fixed-length real vector. Carries embeddings, label vectors and compressed
// tokens alike. Length is set at construction and every element is finite.
class DenseVector {
 public:
  using value_type = double;

  // Zero vector of length n (n >= 1).
  explicit DenseVector(std::size_t n);
  explicit DenseVector(std::vector<double> elements);
  DenseVector(std::initializer_list<double> elements);

  [[nodiscard]] std::size_t size() const noexcept { return elements_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const noexcept { return elements_[i]; }

  [[nodiscard]] std::span<const double> values() const noexcept { return elements_; }
  [[nodiscard]] const double* data() const noexcept { return elements_.data(); }
  [[nodiscard]] auto begin() const noexcept { return elements_.begin(); }
  [[nodiscard]] auto end() const noexcept { return elements_.end(); }

  // Element-wise arithmetic. Operands must have equal length.
  DenseVector& operator+=(const DenseVector& other);
  DenseVector& operator-=(const DenseVector& other);
  DenseVector& operator*=(double factor);
  DenseVector& operator/=(double divisor);

  friend DenseVector operator+(DenseVector lhs, const DenseVector& rhs) { return lhs += rhs; }
  friend DenseVector operator-(DenseVector lhs, const DenseVector& rhs) { return lhs -= rhs; }
  friend DenseVector operator*(DenseVector lhs, double factor) { return lhs *= factor; }
  friend DenseVector operator*(double factor, DenseVector rhs) { return rhs *= factor; }
  friend DenseVector operator-(DenseVector v) { return v *= -1.0; }

  // Bitwise element equality.
  friend bool operator==(const DenseVector& a, const DenseVector& b) = default;

 private:
  std::vector<double> elements_;
};

[[nodiscard]] double dot(const DenseVector& a, const DenseVector& b);
[[nodiscard]] double norm(const DenseVector& v);
[[nodiscard]] double squared_norm(const DenseVector& v);

// Throws DimensionMismatch unless a.size() == b.size().
void require_same_size(const DenseVector& a, const DenseVector& b, const char* context);

}  // namespace hrrembed
