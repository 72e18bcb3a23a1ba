#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hrrembed/dense_vector.hpp"
#include "hrrembed/labeled_vectors.hpp"

namespace hrrembed {

inline constexpr std::size_t kDefaultDimension = 300;
inline constexpr std::uint64_t kDefaultSeed = 300369;

// Label vectors for the token frame: frame label, the TOK/POS/ENT slot labels,
// one filler per POS tag and NER type, and the unknown-token filler.
//
// All vectors come from one RandomSource(seed) in a fixed order: frame, TOK,
// POS, ENT, POS fillers in list order, NER fillers in list order, unknown. Each
// is random_vector(source, dimension), i.e. N(0, 1/dimension) entries.
class Codebook {
 public:
  // Throws ConfigError on empty or duplicate tags, or dimension < 2.
  static Codebook build(std::span<const std::string> pos_tags, std::span<const std::string> ner_types,
                        std::size_t dimension, std::uint64_t seed);

  [[nodiscard]] std::size_t dimension() const noexcept { return dimension_; }
  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

  [[nodiscard]] const DenseVector& frame() const noexcept { return frame_; }
  [[nodiscard]] const DenseVector& token_slot() const noexcept { return token_slot_; }
  [[nodiscard]] const DenseVector& pos_slot() const noexcept { return pos_slot_; }
  [[nodiscard]] const DenseVector& entity_slot() const noexcept { return entity_slot_; }
  [[nodiscard]] const DenseVector& unknown_token() const noexcept { return unknown_; }

  [[nodiscard]] const LabeledVectors& pos_fillers() const noexcept { return pos_fillers_; }
  [[nodiscard]] const LabeledVectors& ner_fillers() const noexcept { return ner_fillers_; }
  [[nodiscard]] std::vector<std::string> pos_tags() const { return pos_fillers_.keys(); }
  [[nodiscard]] std::vector<std::string> ner_types() const { return ner_fillers_.keys(); }

  [[nodiscard]] std::size_t vector_count() const noexcept {
    return 5 + pos_fillers_.size() + ner_fillers_.size();
  }

  // Every vector under its file name ("frame", "slot/TOK", "pos/NN", "ner/ORG",
  // "unknown"...) in draw order.
  [[nodiscard]] LabeledVectors named_vectors() const;

  // True when rebuilding from (seed, dimension, tag lists) gives bitwise the same vectors.
  [[nodiscard]] bool matches_regeneration() const;

  friend bool operator==(const Codebook&, const Codebook&) = default;

 private:
  friend Codebook codebook_from_named_vectors(std::size_t, std::uint64_t, std::span<const std::string>,
                                              std::span<const std::string>, const LabeledVectors&);

  Codebook(std::size_t dimension, std::uint64_t seed)
      : dimension_(dimension),
        seed_(seed),
        frame_(dimension),
        token_slot_(dimension),
        pos_slot_(dimension),
        entity_slot_(dimension),
        unknown_(dimension) {}

  std::size_t dimension_;
  std::uint64_t seed_;
  DenseVector frame_;
  DenseVector token_slot_;
  DenseVector pos_slot_;
  DenseVector entity_slot_;
  DenseVector unknown_;
  LabeledVectors pos_fillers_;
  LabeledVectors ner_fillers_;
};

[[nodiscard]] inline Codebook build_codebook(std::span<const std::string> pos_tags,
                                             std::span<const std::string> ner_types,
                                             std::size_t dimension = kDefaultDimension,
                                             std::uint64_t seed = kDefaultSeed) {
  return Codebook::build(pos_tags, ner_types, dimension, seed);
}

// Codebook over the shipped default tag lists.
[[nodiscard]] Codebook build_default_codebook(std::size_t dimension = kDefaultDimension,
                                              std::uint64_t seed = kDefaultSeed);

// JSON document; see docs/formats.md. Numbers use shortest round-trip
// rendering, so parse(serialize(cb)) == cb bitwise.
[[nodiscard]] std::string serialize_codebook(const Codebook& cb);
// Throws ParseError naming the offending field, IntegrityError on length mismatches.
[[nodiscard]] Codebook parse_codebook(std::string_view text);

void save_codebook(const Codebook& cb, const std::filesystem::path& destination);
[[nodiscard]] Codebook load_codebook(const std::filesystem::path& source);

}  // namespace hrrembed
