#include "hrrembed/synthetic.hpp"

#include <cstdio>

#include "hrrembed/error.hpp"
#include "hrrembed/random.hpp"

namespace hrrembed {

SyntheticCorpus make_synthetic_corpus(const Codebook& cb, std::size_t tokens, std::uint64_t seed,
                                      double entity_fraction) {
  if (!(entity_fraction >= 0.0 && entity_fraction <= 1.0)) throw ConfigError("entity fraction must lie in [0, 1]");
  const std::vector<std::string> pos = cb.pos_tags();
  const std::vector<std::string> ner = cb.ner_types();
  RandomSource rng(seed);
  SyntheticCorpus corpus{EmbeddingTable(cb.dimension()), {}};
  corpus.tokens.reserve(tokens);
  char name[32];
  for (std::size_t i = 0; i < tokens; ++i) {
    std::snprintf(name, sizeof name, "w%04zu", i);
    corpus.table.add(name, random_vector(rng, cb.dimension()));
    AnnotatedToken t;
    t.surface = name;
    t.pos_tag = pos[rng.uniform_index(pos.size())];
    if (!ner.empty() && rng.uniform() < entity_fraction) t.ner_type = ner[rng.uniform_index(ner.size())];
    corpus.tokens.push_back(std::move(t));
  }
  return corpus;
}

}  // namespace hrrembed
