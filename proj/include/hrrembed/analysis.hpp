#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hrrembed/embedding_table.hpp"
#include "hrrembed/encoder.hpp"
#include "hrrembed/labeled_vectors.hpp"

namespace hrrembed {

inline constexpr double kDefaultThreshold = 0.25;
inline constexpr std::size_t kDefaultSampleSize = 100000;
inline constexpr std::size_t kDefaultNeighbors = 10;
inline constexpr std::size_t kExhaustiveKeyLimit = 20000;

// |cosine| histogram: bucket i covers [0.05 i, 0.05 (i + 1)); the last bucket
// also takes |cosine| == 1.
inline constexpr std::size_t kHistogramBuckets = 20;
inline constexpr double kBucketWidth = 0.05;

struct OrthogonalityReport {
  bool exhaustive = false;
  std::size_t requested_pairs = 0;
  std::size_t sample_pairs = 0;
  bool clamped = false;  // requested more pairs than the space could supply
  double threshold = kDefaultThreshold;
  std::size_t below_threshold = 0;
  double fraction_below = 0.0;
  double mean_abs_cosine = 0.0;
  double max_abs_cosine = 0.0;
  std::array<std::size_t, kHistogramBuckets> histogram{};
  std::uint64_t seed = 0;
};

[[nodiscard]] std::size_t histogram_bucket(double abs_cosine) noexcept;

// Two disjoint uniform samples of sample_size keys each, drawn without
// replacement, compared index-wise. sample_size is clamped to |space| / 2.
// Throws ConfigError when |space| < 2 or sample_size == 0.
[[nodiscard]] OrthogonalityReport sample_orthogonality(const LabeledVectors& space, std::size_t sample_size,
                                                       double threshold, std::uint64_t seed, unsigned threads = 1);

// Every unordered pair. Refuses (ConfigError) above max_keys.
[[nodiscard]] OrthogonalityReport exhaustive_orthogonality(const LabeledVectors& space, double threshold,
                                                           std::size_t max_keys = kExhaustiveKeyLimit,
                                                           unsigned threads = 1);

struct Neighbor {
  std::string key;
  double cosine = 0.0;
};

// The k keys closest to core by cosine, core excluded, best first; equal
// cosines order by key. Fewer than k when the space is smaller.
[[nodiscard]] std::vector<Neighbor> k_nearest(const LabeledVectors& space, std::string_view core, std::size_t k);

enum class NeighborClass { same_position, shifted, disjoint };
[[nodiscard]] std::string_view to_string(NeighborClass c) noexcept;

struct NeighborRecord {
  std::string key;
  std::optional<std::size_t> rank_original;    // 1-based
  std::optional<std::size_t> rank_compressed;  // 1-based
  NeighborClass classification = NeighborClass::disjoint;
};

struct PlotMatrix {
  std::vector<std::string> keys;  // core first, then its neighbors by rank
  std::vector<std::vector<double>> cosines;
};

struct CoreNeighborhood {
  std::string core;
  std::string compressed_key;  // vocabulary variant standing in for the core; equals core for plain spaces
  std::vector<Neighbor> original;
  std::vector<Neighbor> compressed;
  std::vector<NeighborRecord> records;  // original list order, then compressed-only keys
  std::size_t same_position = 0;
  std::size_t shifted = 0;
  std::size_t disjoint = 0;  // k - |intersection|
  PlotMatrix original_plot;
  PlotMatrix compressed_plot;
};

struct NeighborhoodReport {
  std::size_t k = kDefaultNeighbors;
  std::vector<CoreNeighborhood> cores;  // sorted by core
  std::size_t same_position = 0;
  std::size_t shifted = 0;
  std::size_t disjoint = 0;
  double fraction_same_position = 0.0;
  double fraction_shifted = 0.0;
  double fraction_disjoint = 0.0;
};

// Both spaces must hold the same key set; every core must be in it. Cores are
// deduplicated and processed in key order.
[[nodiscard]] NeighborhoodReport classify_neighborhoods(const LabeledVectors& original,
                                                        const LabeledVectors& compressed,
                                                        std::span<const std::string> cores, std::size_t k,
                                                        unsigned threads = 1);

// Word-level comparison between a compressed vocabulary (keyed by composite
// key) and the embeddings it was built from (keyed by surface):
//  - only entries with a known filler take part;
//  - a word type's original vector is the filler of its most frequent entry,
//    and that entry also represents a core in the compressed space;
//  - any other word type is represented by whichever of its entries has the
//    highest cosine to the core;
//  - the core's own word type never appears among its neighbors.
// Cores are word types (lowercased before lookup). ConfigError names a core
// that does not resolve.
[[nodiscard]] NeighborhoodReport classify_vocabulary_neighborhoods(const CompressedVocabulary& vocab,
                                                                   const EmbeddingTable& table,
                                                                   std::span<const std::string> cores,
                                                                   std::size_t k, unsigned threads = 1);

// Full-scale split the methodology produced on the complete embedding set;
// reports carry it for comparison only.
inline constexpr double kReferenceSamePosition = 0.18;
inline constexpr double kReferenceShifted = 0.43;
inline constexpr double kReferenceDisjoint = 0.39;

[[nodiscard]] std::string format_orthogonality_report(const OrthogonalityReport& report);
[[nodiscard]] std::string format_neighborhood_report(const NeighborhoodReport& report);

}  // namespace hrrembed
