#include "hrrembed/codebook.hpp"

#include <set>

#include <json.hpp>

#include "hrrembed/default_tags.hpp"
#include "hrrembed/error.hpp"
#include "hrrembed/random.hpp"
#include "hrrembed/text_io.hpp"

namespace hrrembed {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kFormatName = "hrrembed-codebook";
constexpr int kFormatVersion = 1;

void validate_tags(std::span<const std::string> tags, const char* what) {
  if (tags.empty()) throw ConfigError(std::string(what) + " list is empty");
  std::set<std::string_view> seen;
  for (const std::string& tag : tags) {
    if (tag.empty()) throw ConfigError(std::string(what) + " list contains an empty entry");
    if (!seen.insert(tag).second) throw ConfigError(std::string("duplicate ") + what + " '" + tag + "'");
  }
}

std::string pos_name(const std::string& tag) { return "pos/" + tag; }
std::string ner_name(const std::string& type) { return "ner/" + type; }

}  // namespace

Codebook Codebook::build(std::span<const std::string> pos_tags, std::span<const std::string> ner_types,
                         std::size_t dimension, std::uint64_t seed) {
  if (dimension < 2) throw ConfigError("codebook dimension must be at least 2");
  validate_tags(pos_tags, "POS tag");
  validate_tags(ner_types, "NER type");

  Codebook cb(dimension, seed);
  RandomSource source(seed);
  cb.frame_ = random_vector(source, dimension);
  cb.token_slot_ = random_vector(source, dimension);
  cb.pos_slot_ = random_vector(source, dimension);
  cb.entity_slot_ = random_vector(source, dimension);
  for (const std::string& tag : pos_tags) cb.pos_fillers_.add(tag, random_vector(source, dimension));
  for (const std::string& type : ner_types) cb.ner_fillers_.add(type, random_vector(source, dimension));
  cb.unknown_ = random_vector(source, dimension);
  return cb;
}

Codebook build_default_codebook(std::size_t dimension, std::uint64_t seed) {
  return Codebook::build(default_pos_tags(), default_ner_types(), dimension, seed);
}

LabeledVectors Codebook::named_vectors() const {
  LabeledVectors out;
  out.add("frame", frame_);
  out.add("slot/TOK", token_slot_);
  out.add("slot/POS", pos_slot_);
  out.add("slot/ENT", entity_slot_);
  for (const auto& e : pos_fillers_.entries()) out.add(pos_name(e.key), e.vector);
  for (const auto& e : ner_fillers_.entries()) out.add(ner_name(e.key), e.vector);
  out.add("unknown", unknown_);
  return out;
}

bool Codebook::matches_regeneration() const {
  const auto pos = pos_tags();
  const auto ner = ner_types();
  return Codebook::build(pos, ner, dimension_, seed_) == *this;
}

Codebook codebook_from_named_vectors(std::size_t dimension, std::uint64_t seed,
                                     std::span<const std::string> pos_tags,
                                     std::span<const std::string> ner_types,
                                     const LabeledVectors& vectors) {
  Codebook cb(dimension, seed);
  cb.frame_ = vectors.at("frame");
  cb.token_slot_ = vectors.at("slot/TOK");
  cb.pos_slot_ = vectors.at("slot/POS");
  cb.entity_slot_ = vectors.at("slot/ENT");
  for (const std::string& tag : pos_tags) cb.pos_fillers_.add(tag, vectors.at(pos_name(tag)));
  for (const std::string& type : ner_types) cb.ner_fillers_.add(type, vectors.at(ner_name(type)));
  cb.unknown_ = vectors.at("unknown");
  return cb;
}

std::string serialize_codebook(const Codebook& cb) {
  ordered_json doc;
  doc["format"] = kFormatName;
  doc["version"] = kFormatVersion;
  doc["dimension"] = cb.dimension();
  doc["seed"] = cb.seed();
  doc["pos_tags"] = cb.pos_tags();
  doc["ner_types"] = cb.ner_types();
  ordered_json vectors = ordered_json::object();
  const LabeledVectors named = cb.named_vectors();
  for (const auto& e : named.entries()) {
    vectors[e.key] = std::vector<double>(e.vector.begin(), e.vector.end());
  }
  doc["vectors"] = std::move(vectors);
  return doc.dump(1) + "\n";
}

namespace {

const ordered_json& field(const ordered_json& doc, const char* name) {
  auto it = doc.find(name);
  if (it == doc.end()) throw ParseError(std::string("codebook: missing field '") + name + "'");
  return *it;
}

std::vector<std::string> string_list(const ordered_json& doc, const char* name) {
  const ordered_json& node = field(doc, name);
  if (!node.is_array()) throw ParseError(std::string("codebook: field '") + name + "' must be an array");
  std::vector<std::string> out;
  for (const auto& item : node) {
    if (!item.is_string()) {
      throw ParseError(std::string("codebook: field '") + name + "' must contain only strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

}  // namespace

Codebook parse_codebook(std::string_view text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("codebook: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("codebook: top level must be an object");
  if (field(doc, "format") != kFormatName) throw ParseError("codebook: field 'format' is not " + std::string(kFormatName));
  if (!field(doc, "version").is_number_integer() || doc["version"].get<int>() != kFormatVersion) {
    throw ParseError("codebook: unsupported 'version'");
  }
  const ordered_json& dim_node = field(doc, "dimension");
  if (!dim_node.is_number_unsigned()) throw ParseError("codebook: field 'dimension' must be a positive integer");
  const auto dimension = dim_node.get<std::size_t>();
  const ordered_json& seed_node = field(doc, "seed");
  if (!seed_node.is_number_unsigned()) throw ParseError("codebook: field 'seed' must be an unsigned integer");
  const auto seed = seed_node.get<std::uint64_t>();
  if (dimension < 2) throw IntegrityError("codebook: declared dimension must be at least 2");

  const auto pos_tags = string_list(doc, "pos_tags");
  const auto ner_types = string_list(doc, "ner_types");
  try {
    validate_tags(pos_tags, "POS tag");
    validate_tags(ner_types, "NER type");
  } catch (const ConfigError& e) {
    throw ParseError(std::string("codebook: ") + e.what());
  }

  const ordered_json& vec_node = field(doc, "vectors");
  if (!vec_node.is_object()) throw ParseError("codebook: field 'vectors' must be an object");
  LabeledVectors vectors;
  for (auto it = vec_node.begin(); it != vec_node.end(); ++it) {
    const std::string where = "codebook: vectors['" + it.key() + "']";
    if (!it->is_array()) throw ParseError(where + " must be an array of numbers");
    if (it->size() != dimension) {
      throw IntegrityError(where + " has " + std::to_string(it->size()) + " elements but dimension is " +
                           std::to_string(dimension));
    }
    std::vector<double> values;
    values.reserve(dimension);
    for (const auto& x : *it) {
      if (!x.is_number()) throw ParseError(where + " contains a non-number");
      values.push_back(x.get<double>());
    }
    try {
      vectors.add(it.key(), DenseVector(std::move(values)));
    } catch (const Error& e) {
      throw ParseError(where + ": " + e.what());
    }
  }

  const std::size_t expected = 5 + pos_tags.size() + ner_types.size();
  try {
    Codebook cb = codebook_from_named_vectors(dimension, seed, pos_tags, ner_types, vectors);
    if (vectors.size() != expected) {
      throw IntegrityError("codebook: 'vectors' has " + std::to_string(vectors.size()) + " entries, expected " +
                           std::to_string(expected));
    }
    return cb;
  } catch (const ConfigError& e) {
    throw ParseError(std::string("codebook: field 'vectors': ") + e.what());
  }
}

void save_codebook(const Codebook& cb, const std::filesystem::path& destination) {
  write_file_atomic(destination, serialize_codebook(cb));
}

Codebook load_codebook(const std::filesystem::path& source) {
  return parse_codebook(read_file(source));
}

}  // namespace hrrembed
