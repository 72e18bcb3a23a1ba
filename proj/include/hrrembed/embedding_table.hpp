#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>

#include "hrrembed/dense_vector.hpp"
#include "hrrembed/labeled_vectors.hpp"

namespace hrrembed {

// Pre-trained embeddings keyed by case-sensitive surface form.
class EmbeddingTable {
 public:
  explicit EmbeddingTable(std::size_t dimension);

  // Throws DimensionMismatch or ConfigError (duplicate surface).
  void add(std::string surface, DenseVector vector);
  // Keeps the existing entry on a duplicate surface and counts the skip.
  bool add_if_absent(std::string surface, DenseVector vector);

  [[nodiscard]] std::size_t dimension() const noexcept { return dimension_; }
  [[nodiscard]] std::size_t size() const noexcept { return vectors_.size(); }
  [[nodiscard]] const DenseVector* find(std::string_view surface) const { return vectors_.find(surface); }
  [[nodiscard]] const LabeledVectors& vectors() const noexcept { return vectors_; }

  // Lines whose surface form was already present; the first occurrence is kept.
  [[nodiscard]] std::size_t skipped_duplicates() const noexcept { return skipped_duplicates_; }

 private:
  std::size_t dimension_;
  LabeledVectors vectors_;
  std::size_t skipped_duplicates_ = 0;
};

// GloVe text format: a surface form followed by `dimension` numbers, single-space
// separated, one record per line, no header. When the dimension is known, the
// last `dimension` fields are the vector and everything before them is the
// surface (some GloVe releases contain surfaces with spaces). Otherwise the
// first line fixes it as field count - 1. Blank lines are skipped. Throws
// ParseError with the 1-based line number for short rows or non-numeric fields.
struct GloveReadOptions {
  std::optional<std::size_t> dimension;
  std::size_t max_rows = 0;  // 0 reads everything
  // Repeated surfaces normally keep the first row. When set, a repeat whose
  // vector differs from the first throws IntegrityError.
  bool reject_conflicting_duplicates = false;
};

[[nodiscard]] EmbeddingTable read_glove(std::istream& in, const GloveReadOptions& options = {});
[[nodiscard]] EmbeddingTable read_glove_file(const std::filesystem::path& path,
                                             const GloveReadOptions& options = {});

// Dimension of a GloVe file judged from its first non-blank line.
[[nodiscard]] std::size_t peek_glove_dimension(const std::filesystem::path& path);

// Same format, shortest round-trip number rendering.
[[nodiscard]] std::string format_glove(const LabeledVectors& vectors);

}  // namespace hrrembed
