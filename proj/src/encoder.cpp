#include "hrrembed/encoder.hpp"

#include <array>
#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "hrrembed/error.hpp"
#include "hrrembed/hrr.hpp"
#include "hrrembed/parallel.hpp"
#include "hrrembed/text_io.hpp"

namespace hrrembed {

std::string_view to_string(FillerSource source) noexcept {
  switch (source) {
    case FillerSource::exact:
      return "exact";
    case FillerSource::lowercased:
      return "lowercased";
    case FillerSource::unknown:
      return "unknown";
  }
  return "unknown";
}

std::optional<FillerSource> filler_source_from_string(std::string_view text) noexcept {
  if (text == "exact") return FillerSource::exact;
  if (text == "lowercased") return FillerSource::lowercased;
  if (text == "unknown") return FillerSource::unknown;
  return std::nullopt;
}

std::string composite_key(const AnnotatedToken& token) {
  std::string key = to_lower_utf8(token.surface);
  key += token.pos_tag;
  if (token.ner_type) key += *token.ner_type;
  return key;
}

Filler lookup_filler(std::string_view surface, const EmbeddingTable& table, const Codebook& cb) {
  if (table.dimension() != cb.dimension()) {
    throw DimensionMismatch(cb.dimension(), table.dimension(), "embedding table vs codebook");
  }
  if (const auto& entries = table.vectors(); entries.contains(surface)) {
    const auto& entry = entries[entries.index_of(surface)];
    return Filler{&entry.vector, FillerSource::exact, entry.key};
  }
  const std::string lower = to_lower_utf8(surface);
  if (const auto& entries = table.vectors(); entries.contains(lower)) {
    const auto& entry = entries[entries.index_of(lower)];
    return Filler{&entry.vector, FillerSource::lowercased, entry.key};
  }
  return Filler{&cb.unknown_token(), FillerSource::unknown, {}};
}

CompressedToken compress_fillers(const DenseVector& filler, const DenseVector& pos_filler,
                                 const DenseVector* ner_filler, const Codebook& cb, bool unit_norm) {
  require_same_size(cb.frame(), filler, "token filler");
  require_same_size(cb.frame(), pos_filler, "POS filler");
  if (ner_filler != nullptr) require_same_size(cb.frame(), *ner_filler, "NER filler");

  std::array<DenseVector, 4> terms = {cb.frame(), circular_convolve_fft(cb.token_slot(), filler),
                                      circular_convolve_fft(cb.pos_slot(), pos_filler), cb.frame()};
  unsigned m = 3;
  if (ner_filler != nullptr) {
    terms[3] = circular_convolve_fft(cb.entity_slot(), *ner_filler);
    m = 4;
  }
  DenseVector v = superpose(std::span<const DenseVector>(terms.data(), m), m);
  if (unit_norm) {
    const double length = norm(v);
    if (length == 0.0) throw DegenerateVector("compressed token has zero norm");
    v /= length;
  }
  return CompressedToken{std::move(v), m};
}

namespace {

std::string token_location(const AnnotatedToken& token, std::size_t index) {
  return token.line != 0 ? "line " + std::to_string(token.line) : "token " + std::to_string(index + 1);
}

struct ResolvedTags {
  const DenseVector* pos;
  const DenseVector* ner;
};

ResolvedTags resolve_tags(const AnnotatedToken& token, std::size_t index, const Codebook& cb) {
  if (token.surface.empty()) throw ConfigError(token_location(token, index) + ": empty surface form");
  const DenseVector* pos = cb.pos_fillers().find(token.pos_tag);
  if (pos == nullptr) {
    throw ConfigError(token_location(token, index) + ": POS tag '" + token.pos_tag + "' is not in the codebook");
  }
  const DenseVector* ner = nullptr;
  if (token.ner_type) {
    ner = cb.ner_fillers().find(*token.ner_type);
    if (ner == nullptr) {
      throw ConfigError(token_location(token, index) + ": NER type '" + *token.ner_type +
                        "' is not in the codebook");
    }
  }
  return {pos, ner};
}

}  // namespace

CompressedToken compress_token(const AnnotatedToken& token, const EmbeddingTable& table, const Codebook& cb,
                               bool unit_norm) {
  const ResolvedTags tags = resolve_tags(token, 0, cb);
  const Filler filler = lookup_filler(token.surface, table, cb);
  return compress_fillers(*filler.vector, *tags.pos, tags.ner, cb, unit_norm);
}

void CompressedVocabulary::insert(VocabularyEntry entry) {
  if (entry.vector.size() != dimension_) {
    throw DimensionMismatch(dimension_, entry.vector.size(), "vocabulary entry '" + entry.key + "'");
  }
  auto it = index_.find(entry.key);
  if (it != index_.end()) {
    VocabularyEntry& existing = entries_[it->second];
    if (!(existing.vector == entry.vector)) {
      throw IntegrityError("composite key '" + entry.key + "' maps to two different vectors");
    }
    existing.occurrences += entry.occurrences;
    return;
  }
  index_.emplace(entry.key, entries_.size());
  entries_.push_back(std::move(entry));
}

const VocabularyEntry* CompressedVocabulary::find(std::string_view key) const {
  auto it = index_.find(std::string(key));
  return it == index_.end() ? nullptr : &entries_[it->second];
}

LabeledVectors CompressedVocabulary::vectors() const {
  LabeledVectors out;
  for (const auto& e : entries_) out.add(e.key, e.vector);
  return out;
}

CompressedVocabulary build_vocabulary(std::span<const AnnotatedToken> tokens, const EmbeddingTable& table,
                                      const Codebook& cb, const BuildOptions& options) {
  if (table.dimension() != cb.dimension()) {
    throw DimensionMismatch(cb.dimension(), table.dimension(), "embedding table vs codebook");
  }

  struct Pending {
    std::size_t token_index;
    ResolvedTags tags;
    Filler filler;
    std::string key;
    std::string word_type;
    std::size_t occurrences;
  };
  std::vector<Pending> pending;
  std::unordered_map<std::string, std::size_t> key_index;
  std::unordered_set<std::string> word_types;
  VocabularyStats stats;
  stats.input_tokens = tokens.size();

  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const AnnotatedToken& token = tokens[i];
    const ResolvedTags tags = resolve_tags(token, i, cb);
    const Filler filler = lookup_filler(token.surface, table, cb);
    if (filler.source == FillerSource::unknown) ++stats.unknown_filler_tokens;
    std::string key = composite_key(token);
    auto [it, inserted] = key_index.try_emplace(key, pending.size());
    if (inserted) {
      std::string word_type = to_lower_utf8(token.surface);
      word_types.insert(word_type);
      pending.push_back(Pending{i, tags, filler, std::move(key), std::move(word_type), 1});
    } else {
      Pending& first = pending[it->second];
      ++first.occurrences;
      if (first.filler.vector != filler.vector) ++stats.case_variant_tokens;
    }
  }

  std::vector<std::optional<CompressedToken>> compressed(pending.size());
  parallel_for(pending.size(), options.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const Pending& p = pending[i];
      compressed[i] = compress_fillers(*p.filler.vector, *p.tags.pos, p.tags.ner, cb, options.unit_norm);
    }
  });

  CompressedVocabulary vocab(cb.dimension());
  for (std::size_t i = 0; i < pending.size(); ++i) {
    Pending& p = pending[i];
    const AnnotatedToken& token = tokens[p.token_index];
    if (p.filler.source == FillerSource::unknown) ++stats.unknown_filler_keys;
    vocab.insert(VocabularyEntry{std::move(p.key), std::move(compressed[i]->vector),
                                 compressed[i]->component_count, p.filler.source, std::move(p.word_type),
                                 token.pos_tag, token.ner_type, std::string(p.filler.matched_surface),
                                 p.occurrences});
  }
  stats.word_types = word_types.size();
  stats.composite_keys = vocab.size();
  vocab.set_stats(stats);
  return vocab;
}

std::vector<AnnotatedToken> read_annotations(std::istream& in) {
  std::vector<AnnotatedToken> tokens;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = line;
    if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
    if (trim_right(text).empty()) continue;
    const std::size_t tab1 = text.find('\t');
    const std::size_t tab2 = tab1 == std::string_view::npos ? tab1 : text.find('\t', tab1 + 1);
    if (tab2 == std::string_view::npos || text.find('\t', tab2 + 1) != std::string_view::npos) {
      throw ParseError("expected 3 tab-separated fields: surface, POS tag, NER type or '-'", line_no);
    }
    AnnotatedToken token;
    token.surface = std::string(text.substr(0, tab1));
    token.pos_tag = std::string(text.substr(tab1 + 1, tab2 - tab1 - 1));
    const std::string_view ner = text.substr(tab2 + 1);
    if (token.surface.empty()) throw ParseError("empty surface form", line_no);
    if (token.pos_tag.empty()) throw ParseError("empty POS tag", line_no);
    if (ner.empty()) throw ParseError("empty NER field (use '-' for none)", line_no);
    if (ner != "-") token.ner_type = std::string(ner);
    token.line = line_no;
    tokens.push_back(std::move(token));
  }
  if (in.bad()) throw Error("read error in annotation input");
  return tokens;
}

std::vector<AnnotatedToken> read_annotations_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  try {
    return read_annotations(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string format_vocabulary(const CompressedVocabulary& vocab) {
  std::string out;
  for (const auto& entry : vocab.entries()) {
    out += entry.key;
    for (double x : entry.vector) {
      out.push_back(' ');
      append_double(out, x);
    }
    out.push_back('\n');
  }
  return out;
}

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kMetadataFormat = "hrrembed-vocabulary-metadata";
constexpr int kMetadataVersion = 1;

ordered_json stats_to_json(const VocabularyStats& s) {
  ordered_json j;
  j["input_tokens"] = s.input_tokens;
  j["word_types"] = s.word_types;
  j["composite_keys"] = s.composite_keys;
  if (auto g = s.growth_factor()) {
    j["growth_factor"] = *g;
  } else {
    j["growth_factor"] = nullptr;
  }
  j["unknown_filler_keys"] = s.unknown_filler_keys;
  j["unknown_filler_tokens"] = s.unknown_filler_tokens;
  j["case_variant_tokens"] = s.case_variant_tokens;
  return j;
}

template <typename T>
T required(const ordered_json& node, const char* name, const std::string& where) {
  auto it = node.find(name);
  if (it == node.end()) throw ParseError(where + ": missing field '" + name + "'");
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(where + ": field '" + name + "' has the wrong type");
  }
}

}  // namespace

std::string format_vocabulary_metadata(const CompressedVocabulary& vocab) {
  ordered_json doc;
  doc["format"] = kMetadataFormat;
  doc["version"] = kMetadataVersion;
  doc["dimension"] = vocab.dimension();
  doc["statistics"] = stats_to_json(vocab.stats());
  ordered_json entries = ordered_json::object();
  for (const auto& e : vocab.entries()) {
    ordered_json j;
    j["component_count"] = e.component_count;
    j["filler_source"] = to_string(e.filler_source);
    j["word_type"] = e.word_type;
    j["pos_tag"] = e.pos_tag;
    if (e.ner_type) {
      j["ner_type"] = *e.ner_type;
    } else {
      j["ner_type"] = nullptr;
    }
    if (e.filler_surface.empty()) {
      j["filler"] = nullptr;
    } else {
      j["filler"] = e.filler_surface;
    }
    j["occurrences"] = e.occurrences;
    entries[e.key] = std::move(j);
  }
  doc["entries"] = std::move(entries);
  return doc.dump(1) + "\n";
}

CompressedVocabulary load_vocabulary(const std::filesystem::path& vectors_path,
                                     const std::optional<std::filesystem::path>& metadata_path) {
  GloveReadOptions read_options;
  read_options.reject_conflicting_duplicates = true;
  const EmbeddingTable table = read_glove_file(vectors_path, read_options);
  CompressedVocabulary vocab(table.dimension());

  if (!metadata_path) {
    for (const auto& e : table.vectors().entries()) {
      VocabularyEntry entry{e.key, e.vector, 0, FillerSource::unknown, {}, {}, std::nullopt, {}, 1};
      vocab.insert(std::move(entry));
    }
    return vocab;
  }

  const std::string where = metadata_path->string();
  ordered_json doc;
  try {
    doc = ordered_json::parse(read_file(*metadata_path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(where + ": malformed JSON: " + e.what());
  }
  if (!doc.is_object() || required<std::string>(doc, "format", where) != kMetadataFormat) {
    throw ParseError(where + ": not a vocabulary metadata document");
  }
  const auto dimension = required<std::size_t>(doc, "dimension", where);
  if (dimension != table.dimension()) {
    throw IntegrityError(where + ": dimension " + std::to_string(dimension) + " does not match vector file (" +
                         std::to_string(table.dimension()) + ")");
  }
  auto entries_it = doc.find("entries");
  if (entries_it == doc.end() || !entries_it->is_object()) throw ParseError(where + ": missing object 'entries'");
  if (entries_it->size() != table.size()) {
    throw IntegrityError(where + ": " + std::to_string(entries_it->size()) + " metadata entries for " +
                         std::to_string(table.size()) + " vectors");
  }
  for (const auto& e : table.vectors().entries()) {
    auto meta = entries_it->find(e.key);
    if (meta == entries_it->end()) throw IntegrityError(where + ": no metadata for key '" + e.key + "'");
    const std::string entry_where = where + ": entries['" + e.key + "']";
    VocabularyEntry entry{e.key, e.vector, 0, FillerSource::unknown, {}, {}, std::nullopt, {}, 0};
    entry.component_count = required<unsigned>(*meta, "component_count", entry_where);
    const auto source = filler_source_from_string(required<std::string>(*meta, "filler_source", entry_where));
    if (!source) throw ParseError(entry_where + ": bad 'filler_source'");
    entry.filler_source = *source;
    entry.word_type = required<std::string>(*meta, "word_type", entry_where);
    entry.pos_tag = required<std::string>(*meta, "pos_tag", entry_where);
    if (auto ner = meta->find("ner_type"); ner != meta->end() && ner->is_string()) {
      entry.ner_type = ner->get<std::string>();
    }
    if (auto filler = meta->find("filler"); filler != meta->end() && filler->is_string()) {
      entry.filler_surface = filler->get<std::string>();
    }
    entry.occurrences = required<std::size_t>(*meta, "occurrences", entry_where);
    if (entry.component_count != (entry.ner_type ? 4u : 3u)) {
      throw IntegrityError(entry_where + ": component_count disagrees with ner_type");
    }
    vocab.insert(std::move(entry));
  }
  if (auto stats = doc.find("statistics"); stats != doc.end() && stats->is_object()) {
    VocabularyStats s;
    s.input_tokens = required<std::size_t>(*stats, "input_tokens", where);
    s.word_types = required<std::size_t>(*stats, "word_types", where);
    s.composite_keys = required<std::size_t>(*stats, "composite_keys", where);
    s.unknown_filler_keys = required<std::size_t>(*stats, "unknown_filler_keys", where);
    s.unknown_filler_tokens = required<std::size_t>(*stats, "unknown_filler_tokens", where);
    s.case_variant_tokens = required<std::size_t>(*stats, "case_variant_tokens", where);
    vocab.set_stats(s);
  }
  return vocab;
}

}  // namespace hrrembed
