#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hrrembed/codebook.hpp"
#include "hrrembed/embedding_table.hpp"
#include "hrrembed/encoder.hpp"

namespace hrrembed {

// A corpus of `tokens` distinct words ("w0000", "w0001", ...) with N(0, 1/n)
// embeddings, uniformly drawn POS tags and, for about entity_fraction of the
// tokens, a uniformly drawn NER type. Every token yields its own composite key.
struct SyntheticCorpus {
  EmbeddingTable table;
  std::vector<AnnotatedToken> tokens;
};

[[nodiscard]] SyntheticCorpus make_synthetic_corpus(const Codebook& cb, std::size_t tokens, std::uint64_t seed,
                                                    double entity_fraction = 0.5);

}  // namespace hrrembed
