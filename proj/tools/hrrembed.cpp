// hrrembed: codebook generation, vocabulary compression, decoding and analysis.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hrrembed/analysis.hpp"
#include "hrrembed/codebook.hpp"
#include "hrrembed/decoder.hpp"
#include "hrrembed/default_tags.hpp"
#include "hrrembed/embedding_table.hpp"
#include "hrrembed/encoder.hpp"
#include "hrrembed/error.hpp"
#include "hrrembed/synthetic.hpp"
#include "hrrembed/text_io.hpp"

namespace fs = std::filesystem;
using namespace hrrembed;

namespace {

// Regression floors for the synthetic round trip (1000 keys, n = 300).
constexpr double kPosAccuracyFloor = 0.95;
constexpr double kNerAccuracyFloor = 0.95;
constexpr double kCodebookOrthogonalityFloor = 0.95;

struct Options {
  std::size_t dim = kDefaultDimension;
  std::uint64_t seed = kDefaultSeed;
  std::size_t k = kDefaultNeighbors;
  double threshold = kDefaultThreshold;
  std::size_t sample_size = kDefaultSampleSize;
  unsigned threads = 0;
  std::string pos_tags;
  std::string ner_types;

  std::string codebook;
  std::string embeddings;
  std::string annotations;
  std::string vocabulary;
  std::string metadata;
  std::string cores;
  std::string output;
  std::string metadata_output;
  std::string report;
  bool unit_norm = false;
  bool exhaustive = false;
  bool synthetic = false;
  std::size_t synthetic_tokens = 1000;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

std::string default_metadata_path(const std::string& vocabulary) { return vocabulary + ".meta.json"; }

Codebook codebook_from_options(const Options& o) {
  const std::vector<std::string> pos = o.pos_tags.empty() ? default_pos_tags() : read_tag_list(o.pos_tags);
  const std::vector<std::string> ner = o.ner_types.empty() ? default_ner_types() : read_tag_list(o.ner_types);
  return build_codebook(pos, ner, o.dim, o.seed);
}

CompressedVocabulary load_vocabulary_with_optional_sidecar(const Options& o) {
  std::optional<fs::path> meta;
  if (!o.metadata.empty()) {
    meta = o.metadata;
  } else if (fs::exists(default_metadata_path(o.vocabulary))) {
    meta = default_metadata_path(o.vocabulary);
  }
  return load_vocabulary(o.vocabulary, meta);
}

void print_stats(const VocabularyStats& s) {
  std::cout << "input tokens:        " << s.input_tokens << "\n"
            << "word types:          " << s.word_types << "\n"
            << "composite keys:      " << s.composite_keys << "\n"
            << "growth factor:       " << (s.growth_factor() ? fmt(*s.growth_factor()) : "null") << "\n"
            << "unknown-filler keys: " << s.unknown_filler_keys << " (" << s.unknown_filler_tokens
            << " tokens)\n"
            << "case-variant tokens: " << s.case_variant_tokens << "\n";
}

int cmd_build_codebook(const Options& o) {
  const Codebook cb = codebook_from_options(o);
  const OrthogonalityReport r = exhaustive_orthogonality(cb.named_vectors(), o.threshold);
  save_codebook(cb, o.output);
  std::cout << "wrote " << o.output << ": " << cb.vector_count() << " vectors, n=" << cb.dimension()
            << ", seed=" << cb.seed() << "\n"
            << "max pairwise |cosine| " << fmt(r.max_abs_cosine) << ", " << fmt(r.fraction_below)
            << " of pairs below " << fmt(o.threshold) << "\n";
  return 0;
}

int cmd_compress(const Options& o) {
  const Codebook cb = load_codebook(o.codebook);
  const std::size_t embedding_dim = peek_glove_dimension(o.embeddings);
  if (embedding_dim != cb.dimension()) {
    throw DimensionMismatch(cb.dimension(), embedding_dim, "embeddings '" + o.embeddings + "' vs codebook");
  }
  GloveReadOptions read_options;
  read_options.dimension = cb.dimension();
  const EmbeddingTable table = read_glove_file(o.embeddings, read_options);
  const std::vector<AnnotatedToken> tokens = read_annotations_file(o.annotations);
  const CompressedVocabulary vocab = build_vocabulary(tokens, table, cb, {o.threads, o.unit_norm});
  const std::string meta_path = o.metadata_output.empty() ? default_metadata_path(o.output) : o.metadata_output;
  write_file_atomic(o.output, format_vocabulary(vocab));
  write_file_atomic(meta_path, format_vocabulary_metadata(vocab));
  std::cout << "wrote " << o.output << " and " << meta_path << "\n";
  print_stats(vocab.stats());
  return 0;
}

void print_decode_summary(const VocabularyDecode& d) {
  std::size_t inferred = 0;
  for (const auto& e : d.entries) inferred += e.component_count_inferred ? 1 : 0;
  std::cout << "decoded " << d.entries.size() << " entries";
  if (inferred != 0) std::cout << " (" << inferred << " with inferred component count)";
  std::cout << "\n";
  if (auto a = d.pos_accuracy()) {
    std::cout << "POS accuracy " << fmt(*a) << " (" << d.pos_correct << "/" << d.pos_total << ")\n";
  }
  if (auto a = d.ner_accuracy()) {
    std::cout << "NER accuracy " << fmt(*a) << " (" << d.ner_correct << "/" << d.ner_total << ")\n";
  }
}

bool report_floor(const char* name, std::optional<double> value, double floor) {
  const bool ok = value && *value >= floor;
  std::cout << (ok ? "PASS " : "FAIL ") << name << " " << (value ? fmt(*value) : "n/a") << " (floor " << fmt(floor)
            << ")\n";
  return ok;
}

int cmd_decode_synthetic(const Options& o) {
  const Codebook cb = codebook_from_options(o);
  const SyntheticCorpus corpus = make_synthetic_corpus(cb, o.synthetic_tokens, o.seed + 1);
  const CompressedVocabulary vocab = build_vocabulary(corpus.tokens, corpus.table, cb, {o.threads, false});
  const VocabularyDecode d = decode_vocabulary(vocab, cb, nullptr, o.threads);
  if (!o.report.empty()) write_file_atomic(o.report, format_decode_report(d));
  print_decode_summary(d);
  const bool pos_ok = report_floor("pos-accuracy", d.pos_accuracy(), kPosAccuracyFloor);
  const bool ner_ok = report_floor("ner-accuracy", d.ner_accuracy(), kNerAccuracyFloor);
  return pos_ok && ner_ok ? 0 : 1;
}

int cmd_decode(const Options& o) {
  if (o.synthetic) {
    if (!o.codebook.empty()) throw ConfigError("--synthetic takes no positional arguments (use --report)");
    return cmd_decode_synthetic(o);
  }
  if (o.codebook.empty() || o.vocabulary.empty() || o.output.empty()) {
    throw ConfigError("decode needs CODEBOOK VOCABULARY OUTPUT (or --synthetic)");
  }
  const Codebook cb = load_codebook(o.codebook);
  const CompressedVocabulary vocab = load_vocabulary_with_optional_sidecar(o);
  std::optional<LabeledVectors> candidates;
  if (!o.embeddings.empty()) {
    GloveReadOptions read_options;
    read_options.dimension = cb.dimension();
    candidates = read_glove_file(o.embeddings, read_options).vectors();
    candidates->try_add("<unknown>", cb.unknown_token());
  }
  const VocabularyDecode d = decode_vocabulary(vocab, cb, candidates ? &*candidates : nullptr, o.threads);
  write_file_atomic(o.output, format_decode_report(d));
  std::cout << "wrote " << o.output << "\n";
  print_decode_summary(d);
  return 0;
}

int cmd_analyze_orthogonality(const Options& o) {
  const CompressedVocabulary vocab = load_vocabulary(o.vocabulary, std::nullopt);
  const LabeledVectors space = vocab.vectors();
  const OrthogonalityReport r = o.exhaustive ? exhaustive_orthogonality(space, o.threshold, kExhaustiveKeyLimit,
                                                                        o.threads)
                                             : sample_orthogonality(space, o.sample_size, o.threshold, o.seed,
                                                                    o.threads);
  write_file_atomic(o.output, format_orthogonality_report(r));
  std::cout << "wrote " << o.output << "\n"
            << r.sample_pairs << " pairs" << (r.clamped ? " (sample clamped to half the vocabulary)" : "") << ", "
            << fmt(r.fraction_below) << " with |cosine| < " << fmt(r.threshold) << ", mean |cosine| "
            << fmt(r.mean_abs_cosine) << "\n";
  return 0;
}

std::vector<std::string> read_cores(const std::string& path) {
  std::vector<std::string> cores = read_tag_list(path);
  if (cores.empty()) throw ConfigError("cores file '" + path + "' lists no words");
  return cores;
}

int cmd_analyze_neighborhoods(const Options& o) {
  Options with_meta = o;
  if (with_meta.metadata.empty()) with_meta.metadata = default_metadata_path(o.vocabulary);
  const CompressedVocabulary vocab = load_vocabulary(with_meta.vocabulary, fs::path(with_meta.metadata));
  GloveReadOptions read_options;
  read_options.dimension = vocab.dimension();
  const EmbeddingTable table = read_glove_file(o.embeddings, read_options);
  const std::vector<std::string> cores = read_cores(o.cores);
  const NeighborhoodReport r = classify_vocabulary_neighborhoods(vocab, table, cores, o.k, o.threads);
  write_file_atomic(o.output, format_neighborhood_report(r));
  std::cout << "wrote " << o.output << "\n"
            << r.cores.size() << " cores, k=" << r.k << ": same position " << fmt(r.fraction_same_position)
            << ", shifted " << fmt(r.fraction_shifted) << ", disjoint " << fmt(r.fraction_disjoint) << "\n"
            << "full-scale reference: " << fmt(kReferenceSamePosition) << " / " << fmt(kReferenceShifted) << " / "
            << fmt(kReferenceDisjoint) << "\n";
  return 0;
}

int cmd_self_test(const Options& o) {
  const Codebook cb = codebook_from_options(o);
  bool ok = true;

  const OrthogonalityReport cbo = exhaustive_orthogonality(cb.named_vectors(), kDefaultThreshold);
  ok &= report_floor("codebook-orthogonality", cbo.fraction_below, kCodebookOrthogonalityFloor);

  const SyntheticCorpus corpus = make_synthetic_corpus(cb, o.synthetic_tokens, o.seed + 1);
  const CompressedVocabulary vocab = build_vocabulary(corpus.tokens, corpus.table, cb, {o.threads, false});
  const bool growth_ok = vocab.stats().composite_keys >= vocab.stats().word_types;
  std::cout << (growth_ok ? "PASS " : "FAIL ") << "key-growth " << vocab.stats().composite_keys
            << " keys for " << vocab.stats().word_types << " word types\n";
  ok &= growth_ok;

  const VocabularyDecode d = decode_vocabulary(vocab, cb, nullptr, o.threads);
  ok &= report_floor("pos-accuracy", d.pos_accuracy(), kPosAccuracyFloor);
  ok &= report_floor("ner-accuracy", d.ner_accuracy(), kNerAccuracyFloor);

  const OrthogonalityReport vo =
      sample_orthogonality(vocab.vectors(), std::min(o.sample_size, vocab.size() / 2), kDefaultThreshold, o.seed,
                           o.threads);
  std::cout << "INFO vocabulary-orthogonality " << fmt(vo.fraction_below) << " of " << vo.sample_pairs
            << " sampled pairs below " << fmt(kDefaultThreshold) << "\n";

  std::vector<std::string> cores;
  for (std::size_t i = 0; i < std::min<std::size_t>(20, corpus.tokens.size()); ++i) {
    cores.push_back(corpus.tokens[i].surface);
  }
  const NeighborhoodReport nr = classify_vocabulary_neighborhoods(vocab, corpus.table, cores, o.k, o.threads);
  const double sum = nr.fraction_same_position + nr.fraction_shifted + nr.fraction_disjoint;
  const bool sum_ok = std::abs(sum - 1.0) <= 1e-9;
  std::cout << (sum_ok ? "PASS " : "FAIL ") << "neighborhood-fractions " << fmt(nr.fraction_same_position) << " / "
            << fmt(nr.fraction_shifted) << " / " << fmt(nr.fraction_disjoint) << "\n";
  ok &= sum_ok;

  std::cout << (ok ? "self-test passed\n" : "self-test FAILED\n");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Holographic compression of word embeddings with POS and NER annotations"};
  app.require_subcommand(1);
  Options o;

  auto add_codebook_flags = [&](CLI::App* sub) {
    sub->add_option("--dim", o.dim, "Vector dimension")->check(CLI::Range(2, 1 << 20))->capture_default_str();
    sub->add_option("--seed", o.seed, "Random seed")->capture_default_str();
    sub->add_option("--pos-tags", o.pos_tags, "POS tag list, one per line (default: built-in list)")
        ->check(CLI::ExistingFile);
    sub->add_option("--ner-types", o.ner_types, "NER type list, one per line (default: built-in list)")
        ->check(CLI::ExistingFile);
  };
  auto add_threads = [&](CLI::App* sub) {
    sub->add_option("--threads", o.threads, "Worker threads, 0 = all cores")->capture_default_str();
  };

  auto* build = app.add_subcommand("build-codebook", "Generate the label and filler codebook");
  add_codebook_flags(build);
  build->add_option("--threshold", o.threshold, "|cosine| threshold for the summary")->capture_default_str();
  build->add_option("output", o.output, "Codebook JSON to write")->required();

  auto* compress = app.add_subcommand("compress", "Compress annotated tokens into composite-key vectors");
  compress->add_option("codebook", o.codebook, "Codebook JSON")->required()->check(CLI::ExistingFile);
  compress->add_option("embeddings", o.embeddings, "Embeddings in GloVe text format")
      ->required()
      ->check(CLI::ExistingFile);
  compress->add_option("annotations", o.annotations, "Token TAB POS TAB NER-or-'-' lines")
      ->required()
      ->check(CLI::ExistingFile);
  compress->add_option("output", o.output, "Vocabulary to write (GloVe text format)")->required();
  compress->add_option("--meta", o.metadata_output, "Metadata sidecar path (default: OUTPUT.meta.json)");
  compress->add_flag("--unit-norm", o.unit_norm, "Scale every compressed vector to length 1");
  add_threads(compress);

  auto* decode = app.add_subcommand("decode", "Recover POS/NER (and optionally token) from compressed vectors");
  decode->add_option("codebook", o.codebook, "Codebook JSON")->check(CLI::ExistingFile);
  decode->add_option("vocabulary", o.vocabulary, "Compressed vocabulary")->check(CLI::ExistingFile);
  decode->add_option("output", o.output, "Decode report JSON to write");
  decode->add_option("--meta", o.metadata, "Metadata sidecar (default: VOCABULARY.meta.json when present)")
      ->check(CLI::ExistingFile);
  decode->add_option("--embeddings", o.embeddings, "Also decode token identity against these embeddings")
      ->check(CLI::ExistingFile);
  decode->add_flag("--synthetic", o.synthetic,
                   "Generate a random corpus, compress and decode it, and check accuracy floors");
  decode->add_option("--report", o.report, "With --synthetic: decode report JSON to write");
  decode->add_option("--tokens", o.synthetic_tokens, "Synthetic corpus size")->capture_default_str();
  add_codebook_flags(decode);
  add_threads(decode);

  auto* analyze = app.add_subcommand("analyze", "Orthogonality and neighborhood analyses");
  analyze->require_subcommand(1);
  auto* ortho = analyze->add_subcommand("orthogonality", "Sampled (or exhaustive) pairwise |cosine| statistics");
  ortho->add_option("vocabulary", o.vocabulary, "Compressed vocabulary")->required()->check(CLI::ExistingFile);
  ortho->add_option("output", o.output, "Report JSON to write")->required();
  ortho->add_option("--sample-size", o.sample_size, "Pairs to sample (clamped to half the vocabulary)")
      ->capture_default_str();
  ortho->add_option("--threshold", o.threshold, "|cosine| threshold")->capture_default_str();
  ortho->add_option("--seed", o.seed, "Sampling seed")->capture_default_str();
  ortho->add_flag("--exhaustive", o.exhaustive, "Scan every pair instead of sampling");
  add_threads(ortho);

  auto* neigh = analyze->add_subcommand("neighborhoods", "Compare k-nearest neighborhoods across both spaces");
  neigh->add_option("vocabulary", o.vocabulary, "Compressed vocabulary")->required()->check(CLI::ExistingFile);
  neigh->add_option("embeddings", o.embeddings, "Original embeddings")->required()->check(CLI::ExistingFile);
  neigh->add_option("cores", o.cores, "Core words, one per line")->required()->check(CLI::ExistingFile);
  neigh->add_option("output", o.output, "Report JSON to write")->required();
  neigh->add_option("--meta", o.metadata, "Metadata sidecar (default: VOCABULARY.meta.json)")
      ->check(CLI::ExistingFile);
  neigh->add_option("--k", o.k, "Neighbors per core")->check(CLI::PositiveNumber)->capture_default_str();
  add_threads(neigh);

  auto* self_test = app.add_subcommand("self-test", "Synthetic round trip against the regression floors");
  add_codebook_flags(self_test);
  self_test->add_option("--tokens", o.synthetic_tokens, "Synthetic corpus size")->capture_default_str();
  self_test->add_option("--sample-size", o.sample_size, "Orthogonality pairs")->capture_default_str();
  self_test->add_option("--k", o.k, "Neighbors per core")->check(CLI::PositiveNumber)->capture_default_str();
  add_threads(self_test);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*build) return cmd_build_codebook(o);
    if (*compress) return cmd_compress(o);
    if (*decode) return cmd_decode(o);
    if (*ortho) return cmd_analyze_orthogonality(o);
    if (*neigh) return cmd_analyze_neighborhoods(o);
    if (*self_test) return cmd_self_test(o);
  } catch (const std::exception& e) {
    std::cerr << "hrrembed: error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
