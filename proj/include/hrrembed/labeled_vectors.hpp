#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hrrembed/dense_vector.hpp"

namespace hrrembed {

// Insertion-ordered collection of uniquely keyed vectors of one dimension.
// Serves as label sets, embedding tables and cleanup memories.
class LabeledVectors {
 public:
  struct Entry {
    std::string key;
    DenseVector vector;
  };

  LabeledVectors() = default;

  // Throws ConfigError on an empty or duplicate key, DimensionMismatch when the
  // vector length differs from earlier entries.
  void add(std::string key, DenseVector vector);
  // Like add() but returns false instead of throwing on a duplicate key.
  bool try_add(std::string key, DenseVector vector);

  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }
  // 0 while empty.
  [[nodiscard]] std::size_t dimension() const noexcept {
    return entries_.empty() ? 0 : entries_.front().vector.size();
  }

  [[nodiscard]] bool contains(std::string_view key) const;
  [[nodiscard]] const DenseVector* find(std::string_view key) const;
  // Throws ConfigError naming the key when absent.
  [[nodiscard]] const DenseVector& at(std::string_view key) const;
  [[nodiscard]] std::size_t index_of(std::string_view key) const;

  [[nodiscard]] std::span<const Entry> entries() const noexcept { return entries_; }
  [[nodiscard]] const Entry& operator[](std::size_t i) const noexcept { return entries_[i]; }
  [[nodiscard]] std::vector<std::string> keys() const;

  friend bool operator==(const LabeledVectors& a, const LabeledVectors& b) {
    return a.entries_.size() == b.entries_.size() && std::equal(a.entries_.begin(), a.entries_.end(),
                                                                b.entries_.begin(), same_entry);
  }

 private:
  static bool same_entry(const Entry& x, const Entry& y) {
    return x.key == y.key && x.vector == y.vector;
  }

  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept { return std::hash<std::string_view>{}(s); }
  };

  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::size_t, StringHash, std::equal_to<>> index_;
};

struct CleanupResult {
  std::string key;
  double similarity = 0.0;
};

// Cleanup memory lookup: the candidate with maximal cosine similarity to the
// query; equal similarities resolve to the lexicographically smallest key.
// Throws on an empty candidate set, a zero-norm query or mismatched dimensions.
[[nodiscard]] CleanupResult cleanup(const DenseVector& query, const LabeledVectors& candidates);

}  // namespace hrrembed
