#include "hrrembed/analysis.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "hrrembed/error.hpp"
#include "hrrembed/hrr.hpp"
#include "hrrembed/parallel.hpp"
#include "hrrembed/random.hpp"
#include "hrrembed/text_io.hpp"

namespace hrrembed {

std::size_t histogram_bucket(double abs_cosine) noexcept {
  if (!(abs_cosine > 0.0)) return 0;
  const auto b = static_cast<std::size_t>(std::floor(abs_cosine * static_cast<double>(kHistogramBuckets)));
  return std::min(b, kHistogramBuckets - 1);
}

namespace {

void tally(OrthogonalityReport& r, std::span<const double> abs_cosines) {
  double sum = 0.0;
  for (double c : abs_cosines) {
    sum += c;
    r.max_abs_cosine = std::max(r.max_abs_cosine, c);
    ++r.histogram[histogram_bucket(c)];
    if (c < r.threshold) ++r.below_threshold;
  }
  r.sample_pairs = abs_cosines.size();
  r.fraction_below = r.sample_pairs == 0 ? 0.0 : static_cast<double>(r.below_threshold) / r.sample_pairs;
  r.mean_abs_cosine = r.sample_pairs == 0 ? 0.0 : sum / static_cast<double>(r.sample_pairs);
}

void check_threshold(double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) throw ConfigError("threshold must lie in (0, 1]");
}

}  // namespace

OrthogonalityReport sample_orthogonality(const LabeledVectors& space, std::size_t sample_size, double threshold,
                                         std::uint64_t seed, unsigned threads) {
  check_threshold(threshold);
  const std::size_t n = space.size();
  if (n < 2) throw ConfigError("orthogonality sampling needs at least 2 vectors, have " + std::to_string(n));
  if (sample_size == 0) throw ConfigError("sample size must be positive");

  OrthogonalityReport report;
  report.threshold = threshold;
  report.seed = seed;
  report.requested_pairs = sample_size;
  if (2 * sample_size > n) {
    sample_size = n / 2;
    report.clamped = true;
  }

  // Partial Fisher-Yates: the first 2s slots are a uniform sample without
  // replacement; the halves become the two lists.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  RandomSource rng(seed);
  for (std::size_t i = 0; i < 2 * sample_size; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.uniform_index(n - i));
    std::swap(order[i], order[j]);
  }
  const std::span<const std::size_t> first(order.data(), sample_size);
  const std::span<const std::size_t> second(order.data() + sample_size, sample_size);
#ifndef NDEBUG
  {
    std::unordered_set<std::size_t> seen(first.begin(), first.end());
    for (std::size_t i : second) assert(!seen.contains(i));
  }
#endif

  std::vector<double> cosines(sample_size);
  parallel_for(sample_size, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      cosines[i] = std::abs(cosine_similarity(space[first[i]].vector, space[second[i]].vector));
    }
  });
  tally(report, cosines);
  return report;
}

OrthogonalityReport exhaustive_orthogonality(const LabeledVectors& space, double threshold, std::size_t max_keys,
                                             unsigned threads) {
  check_threshold(threshold);
  const std::size_t n = space.size();
  if (n < 2) throw ConfigError("orthogonality scan needs at least 2 vectors, have " + std::to_string(n));
  if (n > max_keys) {
    throw ConfigError("exhaustive scan refused for " + std::to_string(n) + " keys (limit " +
                      std::to_string(max_keys) + "); use sampling");
  }
  std::vector<double> norms(n);
  for (std::size_t i = 0; i < n; ++i) {
    norms[i] = norm(space[i].vector);
    if (norms[i] == 0.0) throw DegenerateVector("vector '" + space[i].key + "' has zero norm");
  }
  // Row i holds pairs (i, j > i) at offset i*n - i*(i+1)/2.
  const std::size_t pairs = n * (n - 1) / 2;
  std::vector<double> cosines(pairs);
  parallel_for(n, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      std::size_t offset = i * n - i * (i + 1) / 2;
      for (std::size_t j = i + 1; j < n; ++j) {
        const double c = dot(space[i].vector, space[j].vector) / (norms[i] * norms[j]);
        cosines[offset++] = std::min(1.0, std::abs(c));
      }
    }
  });
  OrthogonalityReport report;
  report.exhaustive = true;
  report.threshold = threshold;
  report.requested_pairs = pairs;
  tally(report, cosines);
  return report;
}

namespace {

bool better(const Neighbor& a, const Neighbor& b) {
  if (a.cosine != b.cosine) return a.cosine > b.cosine;
  return a.key < b.key;
}

void keep_top(std::vector<Neighbor>& candidates, std::size_t k) {
  if (candidates.size() > k) {
    std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(k), candidates.end(),
                      better);
    candidates.resize(k);
  } else {
    std::sort(candidates.begin(), candidates.end(), better);
  }
}

}  // namespace

std::vector<Neighbor> k_nearest(const LabeledVectors& space, std::string_view core, std::size_t k) {
  if (k == 0) throw ConfigError("k must be at least 1");
  const DenseVector* query = space.find(core);
  if (query == nullptr) throw ConfigError("core '" + std::string(core) + "' is not in the space");
  std::vector<Neighbor> candidates;
  candidates.reserve(space.size());
  for (const auto& e : space.entries()) {
    if (e.key == core) continue;
    candidates.push_back({e.key, cosine_similarity(*query, e.vector)});
  }
  keep_top(candidates, k);
  return candidates;
}

std::string_view to_string(NeighborClass c) noexcept {
  switch (c) {
    case NeighborClass::same_position:
      return "same_position";
    case NeighborClass::shifted:
      return "shifted";
    case NeighborClass::disjoint:
      return "disjoint";
  }
  return "disjoint";
}

namespace {

// Fills records and counts from the two ranked lists. Both lists have the same length.
void classify_core(CoreNeighborhood& c) {
  std::unordered_map<std::string_view, std::size_t> compressed_rank;
  for (std::size_t i = 0; i < c.compressed.size(); ++i) compressed_rank.emplace(c.compressed[i].key, i + 1);
  std::unordered_set<std::string_view> in_original;
  for (std::size_t i = 0; i < c.original.size(); ++i) {
    const std::string& key = c.original[i].key;
    in_original.insert(key);
    NeighborRecord rec{key, i + 1, std::nullopt, NeighborClass::disjoint};
    if (auto it = compressed_rank.find(key); it != compressed_rank.end()) {
      rec.rank_compressed = it->second;
      rec.classification = it->second == i + 1 ? NeighborClass::same_position : NeighborClass::shifted;
    }
    if (rec.classification == NeighborClass::same_position) ++c.same_position;
    if (rec.classification == NeighborClass::shifted) ++c.shifted;
    c.records.push_back(std::move(rec));
  }
  for (std::size_t i = 0; i < c.compressed.size(); ++i) {
    if (in_original.contains(c.compressed[i].key)) continue;
    c.records.push_back({c.compressed[i].key, std::nullopt, i + 1, NeighborClass::disjoint});
  }
  c.disjoint = c.original.size() - c.same_position - c.shifted;
}

PlotMatrix plot_matrix(std::vector<std::string> keys, const std::vector<const DenseVector*>& vectors) {
  PlotMatrix m;
  m.keys = std::move(keys);
  const std::size_t n = vectors.size();
  m.cosines.assign(n, std::vector<double>(n, 1.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      m.cosines[i][j] = m.cosines[j][i] = cosine_similarity(*vectors[i], *vectors[j]);
    }
  }
  return m;
}

PlotMatrix plot_for(const LabeledVectors& space, const std::string& core, const std::vector<Neighbor>& list) {
  std::vector<std::string> keys{core};
  std::vector<const DenseVector*> vectors{&space.at(core)};
  for (const auto& n : list) {
    keys.push_back(n.key);
    vectors.push_back(&space.at(n.key));
  }
  return plot_matrix(std::move(keys), vectors);
}

std::vector<std::string> sorted_unique(std::span<const std::string> cores) {
  std::vector<std::string> out(cores.begin(), cores.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) throw ConfigError("no core tokens given");
  return out;
}

void aggregate(NeighborhoodReport& report) {
  for (const auto& c : report.cores) {
    report.same_position += c.same_position;
    report.shifted += c.shifted;
    report.disjoint += c.disjoint;
  }
  const std::size_t total = report.same_position + report.shifted + report.disjoint;
  if (total == 0) return;
  const auto t = static_cast<double>(total);
  report.fraction_same_position = static_cast<double>(report.same_position) / t;
  report.fraction_shifted = static_cast<double>(report.shifted) / t;
  report.fraction_disjoint = static_cast<double>(report.disjoint) / t;
}

}  // namespace

NeighborhoodReport classify_neighborhoods(const LabeledVectors& original, const LabeledVectors& compressed,
                                          std::span<const std::string> cores, std::size_t k, unsigned threads) {
  if (k == 0) throw ConfigError("k must be at least 1");
  if (original.size() != compressed.size()) {
    throw ConfigError("spaces differ in size (" + std::to_string(original.size()) + " vs " +
                      std::to_string(compressed.size()) + ")");
  }
  for (const auto& e : original.entries()) {
    if (!compressed.contains(e.key)) throw ConfigError("key '" + e.key + "' is missing from the compressed space");
  }
  const std::vector<std::string> core_list = sorted_unique(cores);
  for (const auto& core : core_list) {
    if (!original.contains(core)) throw ConfigError("core '" + core + "' is not in the space");
  }

  NeighborhoodReport report;
  report.k = k;
  report.cores.resize(core_list.size());
  parallel_for(core_list.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      CoreNeighborhood& c = report.cores[i];
      c.core = core_list[i];
      c.compressed_key = c.core;
      c.original = k_nearest(original, c.core, k);
      c.compressed = k_nearest(compressed, c.core, k);
      classify_core(c);
      c.original_plot = plot_for(original, c.core, c.original);
      c.compressed_plot = plot_for(compressed, c.core, c.compressed);
    }
  });
  aggregate(report);
  return report;
}

NeighborhoodReport classify_vocabulary_neighborhoods(const CompressedVocabulary& vocab, const EmbeddingTable& table,
                                                     std::span<const std::string> cores, std::size_t k,
                                                     unsigned threads) {
  if (k == 0) throw ConfigError("k must be at least 1");
  if (vocab.dimension() == 0 || vocab.empty()) throw ConfigError("vocabulary is empty");

  // Word types in first-appearance order with their known-filler entries.
  struct WordType {
    std::string name;
    std::vector<const VocabularyEntry*> entries;
    const VocabularyEntry* primary = nullptr;  // most frequent entry, ties to the smaller key
    const DenseVector* original = nullptr;
  };
  std::vector<WordType> types;
  std::unordered_map<std::string, std::size_t> type_index;
  for (const auto& e : vocab.entries()) {
    if (e.filler_source == FillerSource::unknown) continue;
    if (e.word_type.empty() || e.filler_surface.empty()) {
      throw ConfigError("vocabulary entry '" + e.key + "' lacks metadata; load it with its sidecar");
    }
    auto [it, inserted] = type_index.try_emplace(e.word_type, types.size());
    if (inserted) types.push_back(WordType{e.word_type, {}, nullptr, nullptr});
    WordType& wt = types[it->second];
    wt.entries.push_back(&e);
    if (wt.primary == nullptr || e.occurrences > wt.primary->occurrences ||
        (e.occurrences == wt.primary->occurrences && e.key < wt.primary->key)) {
      wt.primary = &e;
    }
  }
  for (auto& wt : types) {
    wt.original = table.find(wt.primary->filler_surface);
    if (wt.original == nullptr) {
      throw IntegrityError("filler '" + wt.primary->filler_surface + "' of '" + wt.primary->key +
                           "' is not in the embedding table");
    }
  }

  std::vector<std::string> core_list;
  for (const auto& c : cores) core_list.push_back(to_lower_utf8(c));
  core_list = sorted_unique(core_list);
  for (const auto& core : core_list) {
    if (!type_index.contains(core)) {
      throw ConfigError("core '" + core + "' has no vocabulary entry with a known embedding");
    }
  }

  NeighborhoodReport report;
  report.k = k;
  report.cores.resize(core_list.size());
  parallel_for(core_list.size(), threads, [&](std::size_t begin, std::size_t end) {
    std::vector<Neighbor> original;
    std::vector<Neighbor> compressed;
    std::vector<const VocabularyEntry*> representative(types.size());
    for (std::size_t ci = begin; ci < end; ++ci) {
      CoreNeighborhood& c = report.cores[ci];
      const std::size_t core_type = type_index.at(core_list[ci]);
      const WordType& core = types[core_type];
      const DenseVector& q = core.primary->vector;
      c.core = core.name;
      c.compressed_key = core.primary->key;

      original.clear();
      compressed.clear();
      for (std::size_t t = 0; t < types.size(); ++t) {
        if (t == core_type) continue;
        const WordType& wt = types[t];
        original.push_back({wt.name, cosine_similarity(*core.original, *wt.original)});
        const VocabularyEntry* best = nullptr;
        double best_cos = -2.0;
        for (const VocabularyEntry* e : wt.entries) {
          const double cs = cosine_similarity(q, e->vector);
          if (cs > best_cos || (cs == best_cos && e->key < best->key)) {
            best = e;
            best_cos = cs;
          }
        }
        representative[t] = best;
        compressed.push_back({wt.name, best_cos});
      }
      keep_top(original, k);
      keep_top(compressed, k);
      c.original = original;
      c.compressed = compressed;
      classify_core(c);

      std::vector<std::string> keys{c.core};
      std::vector<const DenseVector*> vecs{core.original};
      for (const auto& n : c.original) {
        keys.push_back(n.key);
        vecs.push_back(types[type_index.at(n.key)].original);
      }
      c.original_plot = plot_matrix(std::move(keys), vecs);
      keys = {c.compressed_key};
      vecs = {&q};
      for (const auto& n : c.compressed) {
        const VocabularyEntry* rep = representative[type_index.at(n.key)];
        keys.push_back(rep->key);
        vecs.push_back(&rep->vector);
      }
      c.compressed_plot = plot_matrix(std::move(keys), vecs);
    }
  });
  aggregate(report);
  return report;
}

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json neighbor_list(const std::vector<Neighbor>& list) {
  ordered_json out = ordered_json::array();
  for (const auto& n : list) out.push_back({{"key", n.key}, {"cosine", n.cosine}});
  return out;
}

ordered_json plot_json(const PlotMatrix& m) {
  return {{"keys", m.keys}, {"cosines", m.cosines}};
}

ordered_json optional_rank(const std::optional<std::size_t>& r) {
  return r ? ordered_json(*r) : ordered_json(nullptr);
}

}  // namespace

std::string format_orthogonality_report(const OrthogonalityReport& r) {
  ordered_json doc;
  doc["report"] = "orthogonality";
  doc["method"] = r.exhaustive ? "exhaustive" : "sampled";
  if (!r.exhaustive) doc["seed"] = r.seed;
  doc["requested_pairs"] = r.requested_pairs;
  doc["sample_pairs"] = r.sample_pairs;
  doc["clamped"] = r.clamped;
  doc["threshold"] = r.threshold;
  doc["below_threshold"] = r.below_threshold;
  doc["fraction_below"] = r.fraction_below;
  doc["mean_abs_cosine"] = r.mean_abs_cosine;
  doc["max_abs_cosine"] = r.max_abs_cosine;
  ordered_json hist = ordered_json::array();
  for (std::size_t i = 0; i < kHistogramBuckets; ++i) {
    // Bounds in exact twentieths, written from integers so they print cleanly.
    hist.push_back({{"lower", static_cast<double>(i) / 20.0},
                    {"upper", static_cast<double>(i + 1) / 20.0},
                    {"count", r.histogram[i]}});
  }
  doc["histogram"] = std::move(hist);
  return doc.dump(1) + "\n";
}

std::string format_neighborhood_report(const NeighborhoodReport& r) {
  ordered_json doc;
  doc["report"] = "neighborhoods";
  doc["k"] = r.k;
  ordered_json core_names = ordered_json::array();
  for (const auto& c : r.cores) core_names.push_back(c.core);
  doc["core_tokens"] = std::move(core_names);
  doc["fractions"] = {{"same_position", r.fraction_same_position},
                      {"shifted", r.fraction_shifted},
                      {"disjoint", r.fraction_disjoint}};
  doc["counts"] = {{"same_position", r.same_position}, {"shifted", r.shifted}, {"disjoint", r.disjoint}};
  doc["reference_full_scale"] = {{"same_position", kReferenceSamePosition},
                                 {"shifted", kReferenceShifted},
                                 {"disjoint", kReferenceDisjoint}};
  ordered_json cores = ordered_json::array();
  for (const auto& c : r.cores) {
    ordered_json j;
    j["core"] = c.core;
    j["compressed_key"] = c.compressed_key;
    j["counts"] = {{"same_position", c.same_position}, {"shifted", c.shifted}, {"disjoint", c.disjoint}};
    ordered_json records = ordered_json::array();
    for (const auto& rec : c.records) {
      records.push_back({{"key", rec.key},
                         {"rank_original", optional_rank(rec.rank_original)},
                         {"rank_compressed", optional_rank(rec.rank_compressed)},
                         {"class", to_string(rec.classification)}});
    }
    j["neighbors"] = std::move(records);
    j["original"] = neighbor_list(c.original);
    j["compressed"] = neighbor_list(c.compressed);
    j["original_plot"] = plot_json(c.original_plot);
    j["compressed_plot"] = plot_json(c.compressed_plot);
    cores.push_back(std::move(j));
  }
  doc["cores"] = std::move(cores);
  return doc.dump(1) + "\n";
}

}  // namespace hrrembed
