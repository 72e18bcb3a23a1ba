#include "hrrembed/decoder.hpp"

#include <json.hpp>

#include "hrrembed/error.hpp"
#include "hrrembed/hrr.hpp"
#include "hrrembed/parallel.hpp"

namespace hrrembed {

DenseVector unbind_slot(const DenseVector& compressed, const DenseVector& slot_label, unsigned m,
                        const DenseVector& frame_label) {
  require_same_size(slot_label, compressed, "unbind_slot");
  require_same_size(frame_label, compressed, "unbind_slot");
  if (m == 0) throw ConfigError("component count must be positive");
  DenseVector residual = compressed * static_cast<double>(m);
  residual -= frame_label;
  return circular_correlate_fft(slot_label, residual);
}

namespace {

void require_valid_m(unsigned m) {
  if (m != 3 && m != 4) throw ConfigError("component count must be 3 or 4, got " + std::to_string(m));
}

}  // namespace

DecodedToken decode_attributes(const DenseVector& compressed, unsigned m, const Codebook& cb) {
  require_valid_m(m);
  DecodedToken out;
  out.pos = cleanup(unbind_slot(compressed, cb.pos_slot(), m, cb.frame()), cb.pos_fillers());
  if (m == 4) out.ner = cleanup(unbind_slot(compressed, cb.entity_slot(), m, cb.frame()), cb.ner_fillers());
  return out;
}

CleanupResult decode_token_identity(const DenseVector& compressed, unsigned m, const Codebook& cb,
                                    const LabeledVectors& candidates) {
  require_valid_m(m);
  if (candidates.empty()) throw ConfigError("token identity needs a non-empty candidate set");
  return cleanup(unbind_slot(compressed, cb.token_slot(), m, cb.frame()), candidates);
}

CleanupResult decode_token_identity(const DenseVector& compressed, unsigned m, const Codebook& cb,
                                    const EmbeddingTable& table) {
  return decode_token_identity(compressed, m, cb, table.vectors());
}

unsigned infer_component_count(const DenseVector& compressed, const Codebook& cb, double threshold) {
  const DenseVector probe = unbind_slot(compressed, cb.entity_slot(), 4, cb.frame());
  return cleanup(probe, cb.ner_fillers()).similarity >= threshold ? 4u : 3u;
}

VocabularyDecode decode_vocabulary(const CompressedVocabulary& vocab, const Codebook& cb,
                                   const LabeledVectors* identity_candidates, unsigned threads) {
  if (vocab.dimension() != cb.dimension()) {
    throw DimensionMismatch(cb.dimension(), vocab.dimension(), "vocabulary vs codebook");
  }
  const auto entries = vocab.entries();
  VocabularyDecode out;
  out.entries.resize(entries.size());
  parallel_for(entries.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const VocabularyEntry& e = entries[i];
      DecodedEntry& d = out.entries[i];
      d.key = e.key;
      d.component_count = e.component_count;
      if (d.component_count == 0) {
        d.component_count = infer_component_count(e.vector, cb);
        d.component_count_inferred = true;
      }
      d.attributes = decode_attributes(e.vector, d.component_count, cb);
      if (identity_candidates != nullptr) {
        d.token = decode_token_identity(e.vector, d.component_count, cb, *identity_candidates);
      }
    }
  });
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const VocabularyEntry& e = entries[i];
    const DecodedEntry& d = out.entries[i];
    if (e.component_count == 0) continue;
    ++out.pos_total;
    if (d.attributes.pos.key == e.pos_tag) ++out.pos_correct;
    if (e.ner_type) {
      ++out.ner_total;
      if (d.attributes.ner && d.attributes.ner->key == *e.ner_type) ++out.ner_correct;
    }
  }
  return out;
}

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json cleanup_json(const std::optional<CleanupResult>& r) {
  if (!r) return nullptr;
  return {{"key", r->key}, {"similarity", r->similarity}};
}

ordered_json accuracy_json(std::size_t correct, std::size_t total) {
  if (total == 0) return nullptr;
  return {{"correct", correct}, {"total", total},
          {"accuracy", static_cast<double>(correct) / static_cast<double>(total)}};
}

}  // namespace

std::string format_decode_report(const VocabularyDecode& result) {
  ordered_json doc;
  doc["report"] = "decode";
  doc["pos_accuracy"] = accuracy_json(result.pos_correct, result.pos_total);
  doc["ner_accuracy"] = accuracy_json(result.ner_correct, result.ner_total);
  ordered_json entries = ordered_json::array();
  for (const auto& d : result.entries) {
    ordered_json j;
    j["key"] = d.key;
    j["component_count"] = d.component_count;
    j["component_count_inferred"] = d.component_count_inferred;
    j["pos"] = cleanup_json(d.attributes.pos);
    j["ner"] = cleanup_json(d.attributes.ner);
    if (d.token) j["token"] = cleanup_json(d.token);
    entries.push_back(std::move(j));
  }
  doc["entries"] = std::move(entries);
  return doc.dump(1) + "\n";
}

}  // namespace hrrembed
