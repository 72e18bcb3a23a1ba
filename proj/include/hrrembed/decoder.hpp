#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hrrembed/codebook.hpp"
#include "hrrembed/dense_vector.hpp"
#include "hrrembed/embedding_table.hpp"
#include "hrrembed/encoder.hpp"
#include "hrrembed/labeled_vectors.hpp"

namespace hrrembed {

struct DecodedToken {
  CleanupResult pos;
  std::optional<CleanupResult> ner;  // only when decoded with m == 4
};

// correlate(slot_label, m * compressed - frame_label): the slot's filler plus
// crosstalk from the other bindings. m is the superposition divisor used when
// the vector was built (any value >= 1 is accepted, 3 and 4 in practice).
[[nodiscard]] DenseVector unbind_slot(const DenseVector& compressed, const DenseVector& slot_label, unsigned m,
                                      const DenseVector& frame_label);

// POS by cleanup over the codebook's POS fillers; NER likewise when m == 4.
// Throws ConfigError for m outside {3, 4}.
[[nodiscard]] DecodedToken decode_attributes(const DenseVector& compressed, unsigned m, const Codebook& cb);

// Cleanup of the TOK-slot unbinding against `candidates` (usually the embedding
// table, optionally with the unknown vector added). No thresholding.
[[nodiscard]] CleanupResult decode_token_identity(const DenseVector& compressed, unsigned m, const Codebook& cb,
                                                  const LabeledVectors& candidates);
[[nodiscard]] CleanupResult decode_token_identity(const DenseVector& compressed, unsigned m, const Codebook& cb,
                                                  const EmbeddingTable& table);

// Guesses m for a vector without a sidecar: unbinds the ENT slot under m = 4
// and accepts when the best NER cleanup similarity reaches `threshold`.
inline constexpr double kEntityPresenceThreshold = 0.3;
[[nodiscard]] unsigned infer_component_count(const DenseVector& compressed, const Codebook& cb,
                                             double threshold = kEntityPresenceThreshold);

struct DecodedEntry {
  std::string key;
  unsigned component_count = 3;
  bool component_count_inferred = false;  // no sidecar value, guessed from the ENT slot
  DecodedToken attributes;
  std::optional<CleanupResult> token;
};

struct VocabularyDecode {
  std::vector<DecodedEntry> entries;  // vocabulary order
  // Ground truth comes from entry metadata; totals stay 0 without it.
  std::size_t pos_correct = 0;
  std::size_t pos_total = 0;
  std::size_t ner_correct = 0;
  std::size_t ner_total = 0;

  [[nodiscard]] std::optional<double> pos_accuracy() const noexcept {
    if (pos_total == 0) return std::nullopt;
    return static_cast<double>(pos_correct) / static_cast<double>(pos_total);
  }
  [[nodiscard]] std::optional<double> ner_accuracy() const noexcept {
    if (ner_total == 0) return std::nullopt;
    return static_cast<double>(ner_correct) / static_cast<double>(ner_total);
  }
};

// Decodes every entry. Entries without a component count (loaded without a
// sidecar) get infer_component_count. Token identity is decoded only when
// identity_candidates is given.
[[nodiscard]] VocabularyDecode decode_vocabulary(const CompressedVocabulary& vocab, const Codebook& cb,
                                                 const LabeledVectors* identity_candidates = nullptr,
                                                 unsigned threads = 1);

[[nodiscard]] std::string format_decode_report(const VocabularyDecode& result);

}  // namespace hrrembed
