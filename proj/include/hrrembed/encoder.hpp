#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hrrembed/codebook.hpp"
#include "hrrembed/dense_vector.hpp"
#include "hrrembed/embedding_table.hpp"
#include "hrrembed/labeled_vectors.hpp"

namespace hrrembed {

// One annotated token from a tagged corpus.
struct AnnotatedToken {
  std::string surface;                  // original case
  std::string pos_tag;
  std::optional<std::string> ner_type;  // nullopt: no entity
  std::size_t line = 0;                 // source line for diagnostics, 0 when not from a file
};

enum class FillerSource { exact, lowercased, unknown };

[[nodiscard]] std::string_view to_string(FillerSource source) noexcept;
[[nodiscard]] std::optional<FillerSource> filler_source_from_string(std::string_view text) noexcept;

// lowercase(surface) + pos_tag + ner_type, no separators: ("Fish", NNP, PERSON) -> "fishNNPPERSON".
[[nodiscard]] std::string composite_key(const AnnotatedToken& token);

struct Filler {
  const DenseVector* vector = nullptr;  // points into the table or the codebook
  FillerSource source = FillerSource::unknown;
  std::string_view matched_surface;     // table key that was hit; empty for unknown
};

// Exact-case hit, then lowercase hit, then the codebook's unknown-token vector.
// Throws DimensionMismatch when table and codebook disagree.
[[nodiscard]] Filler lookup_filler(std::string_view surface, const EmbeddingTable& table, const Codebook& cb);

struct CompressedToken {
  DenseVector vector;
  unsigned component_count = 3;  // m: 4 with an NER binding, else 3
};

// (frame + TOK*filler + POS*pos_tag [+ ENT*ne_type]) / m with * = circular
// convolution. unit_norm rescales the result to length 1 afterwards.
[[nodiscard]] CompressedToken compress_fillers(const DenseVector& filler, const DenseVector& pos_filler,
                                               const DenseVector* ner_filler, const Codebook& cb,
                                               bool unit_norm = false);

// Throws ConfigError naming the tag when the POS tag or NER type is not in the codebook.
[[nodiscard]] CompressedToken compress_token(const AnnotatedToken& token, const EmbeddingTable& table,
                                             const Codebook& cb, bool unit_norm = false);

struct VocabularyEntry {
  std::string key;
  DenseVector vector;
  unsigned component_count = 3;
  FillerSource filler_source = FillerSource::unknown;
  std::string word_type;               // lowercased surface
  std::string pos_tag;
  std::optional<std::string> ner_type;
  std::string filler_surface;          // embedding-table key used, empty for unknown
  std::size_t occurrences = 0;
};

struct VocabularyStats {
  std::size_t input_tokens = 0;
  std::size_t word_types = 0;           // distinct lowercased surfaces
  std::size_t composite_keys = 0;
  std::size_t unknown_filler_keys = 0;
  std::size_t unknown_filler_tokens = 0;
  // Tokens whose key already existed with a filler taken from a different
  // surface casing ("The" after "the"); the first occurrence's filler is kept.
  std::size_t case_variant_tokens = 0;

  // composite_keys / word_types; nullopt for an empty corpus.
  [[nodiscard]] std::optional<double> growth_factor() const noexcept {
    if (word_types == 0) return std::nullopt;
    return static_cast<double>(composite_keys) / static_cast<double>(word_types);
  }
};

// Composite key -> compressed vector, in first-appearance order.
class CompressedVocabulary {
 public:
  explicit CompressedVocabulary(std::size_t dimension) : dimension_(dimension) {}

  // Adds an entry. An existing key with a bitwise-identical vector is merged
  // (occurrences add up); a different vector under the same key throws IntegrityError.
  void insert(VocabularyEntry entry);

  [[nodiscard]] std::size_t dimension() const noexcept { return dimension_; }
  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }
  [[nodiscard]] std::span<const VocabularyEntry> entries() const noexcept { return entries_; }
  [[nodiscard]] const VocabularyEntry* find(std::string_view key) const;

  [[nodiscard]] const VocabularyStats& stats() const noexcept { return stats_; }
  void set_stats(const VocabularyStats& stats) { stats_ = stats; }

  // Key -> vector view for the analysis routines.
  [[nodiscard]] LabeledVectors vectors() const;

 private:
  std::size_t dimension_;
  std::vector<VocabularyEntry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
  VocabularyStats stats_;
};

struct BuildOptions {
  unsigned threads = 1;  // 0: all hardware threads
  bool unit_norm = false;
};

// One entry per distinct composite key; the first occurrence fixes the entry.
// Throws ConfigError at the first token with an unknown POS/NER tag or an empty
// surface (message carries the token's line) and DimensionMismatch when table
// and codebook disagree. Output does not depend on options.threads.
[[nodiscard]] CompressedVocabulary build_vocabulary(std::span<const AnnotatedToken> tokens,
                                                    const EmbeddingTable& table, const Codebook& cb,
                                                    const BuildOptions& options = {});

// Annotation format: surface TAB pos_tag TAB ner_type-or-"-", one token per
// line, blank lines ignored. Throws ParseError with the line number.
[[nodiscard]] std::vector<AnnotatedToken> read_annotations(std::istream& in);
[[nodiscard]] std::vector<AnnotatedToken> read_annotations_file(const std::filesystem::path& path);

// Vocabulary vectors in GloVe text format keyed by composite key.
[[nodiscard]] std::string format_vocabulary(const CompressedVocabulary& vocab);
// Sidecar JSON: per-key component_count, filler_source and annotations, plus build statistics.
[[nodiscard]] std::string format_vocabulary_metadata(const CompressedVocabulary& vocab);

// Reads a vocabulary file and, when given, its sidecar. Without a sidecar the
// entries carry the key and vector only (component_count 0, empty annotations).
// A sidecar that disagrees with the vector file throws IntegrityError.
[[nodiscard]] CompressedVocabulary load_vocabulary(const std::filesystem::path& vectors_path,
                                                   const std::optional<std::filesystem::path>& metadata_path);

}  // namespace hrrembed
