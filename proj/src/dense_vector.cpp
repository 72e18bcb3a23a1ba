#include "hrrembed/dense_vector.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hrrembed/error.hpp"

namespace hrrembed {
namespace {

void require_finite(const std::vector<double>& elements) {
  if (elements.empty()) {
    throw Error("DenseVector: length must be at least 1");
  }
  if (!std::all_of(elements.begin(), elements.end(), [](double x) { return std::isfinite(x); })) {
    throw Error("DenseVector: non-finite element");
  }
}

}  // namespace

DenseVector::DenseVector(std::size_t n) : elements_(n, 0.0) {
  if (n == 0) {
    throw Error("DenseVector: length must be at least 1");
  }
}

DenseVector::DenseVector(std::vector<double> elements) : elements_(std::move(elements)) {
  require_finite(elements_);
}

DenseVector::DenseVector(std::initializer_list<double> elements) : elements_(elements) {
  require_finite(elements_);
}

DenseVector& DenseVector::operator+=(const DenseVector& other) {
  require_same_size(*this, other, "vector addition");
  for (std::size_t i = 0; i < elements_.size(); ++i) elements_[i] += other.elements_[i];
  return *this;
}

DenseVector& DenseVector::operator-=(const DenseVector& other) {
  require_same_size(*this, other, "vector subtraction");
  for (std::size_t i = 0; i < elements_.size(); ++i) elements_[i] -= other.elements_[i];
  return *this;
}

DenseVector& DenseVector::operator*=(double factor) {
  if (!std::isfinite(factor)) throw Error("DenseVector: non-finite scale factor");
  for (double& x : elements_) x *= factor;
  return *this;
}

DenseVector& DenseVector::operator/=(double divisor) {
  if (divisor == 0.0 || !std::isfinite(divisor)) throw Error("DenseVector: invalid divisor");
  for (double& x : elements_) x /= divisor;
  return *this;
}

double dot(const DenseVector& a, const DenseVector& b) {
  require_same_size(a, b, "dot product");
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double squared_norm(const DenseVector& v) {
  return std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
}

double norm(const DenseVector& v) { return std::sqrt(squared_norm(v)); }

void require_same_size(const DenseVector& a, const DenseVector& b, const char* context) {
  if (a.size() != b.size()) {
    throw DimensionMismatch(a.size(), b.size(), context);
  }
}

}  // namespace hrrembed
