#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include <json.hpp>

#include "hrrembed/analysis.hpp"
#include "hrrembed/codebook.hpp"
#include "hrrembed/error.hpp"
#include "hrrembed/hrr.hpp"
#include "hrrembed/random.hpp"
#include "hrrembed/synthetic.hpp"

using namespace hrrembed;

namespace {

std::string key_of(std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "k%03zu", i);
  return buf;
}

LabeledVectors random_space(std::size_t count, std::size_t dim, std::uint64_t seed) {
  RandomSource r(seed);
  LabeledVectors s;
  for (std::size_t i = 0; i < count; ++i) s.add(key_of(i), random_vector(r, dim));
  return s;
}

// Coarsely quantised entries so that equal cosines (and tie-breaks) occur.
LabeledVectors tie_heavy_space(std::size_t count, std::uint64_t seed) {
  RandomSource r(seed);
  LabeledVectors s;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<double> v(3);
    for (double& x : v) x = static_cast<double>(r.uniform_index(3)) - 1.0;
    if (v[0] == 0 && v[1] == 0 && v[2] == 0) v[0] = 1;
    s.add(key_of(i), DenseVector(std::move(v)));
  }
  return s;
}

// Exhaustive scan: every other key with its cosine, fully sorted.
std::vector<Neighbor> brute_force(const LabeledVectors& s, const std::string& core, std::size_t k) {
  std::vector<Neighbor> all;
  for (const auto& e : s.entries()) {
    if (e.key != core) all.push_back({e.key, cosine_similarity(s.at(core), e.vector)});
  }
  std::stable_sort(all.begin(), all.end(), [](const Neighbor& a, const Neighbor& b) {
    return a.cosine > b.cosine || (a.cosine == b.cosine && a.key < b.key);
  });
  all.resize(std::min(k, all.size()));
  return all;
}

void expect_same(const std::vector<Neighbor>& got, const std::vector<Neighbor>& want) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    EXPECT_EQ(got[i].key, want[i].key) << "rank " << i + 1;
    EXPECT_EQ(got[i].cosine, want[i].cosine) << "rank " << i + 1;
  }
}

LabeledVectors with_negated(const LabeledVectors& s, const std::string& target) {
  LabeledVectors out;
  for (const auto& e : s.entries()) out.add(e.key, e.key == target ? -e.vector : e.vector);
  return out;
}

}  // namespace

TEST(KNearest, HandExample) {
  LabeledVectors s;
  s.add("a", {1, 0});
  s.add("b", {0.9, 0.1});
  s.add("c", {0, 1});
  const auto n = k_nearest(s, "a", 2);
  ASSERT_EQ(n.size(), 2u);
  EXPECT_EQ(n[0].key, "b");
  EXPECT_EQ(n[1].key, "c");
  EXPECT_EQ(k_nearest(s, "a", 10).size(), 2u);
  EXPECT_THROW((void)k_nearest(s, "zz", 2), ConfigError);
  EXPECT_THROW((void)k_nearest(s, "a", 0), ConfigError);
}

TEST(KNearest, MatchesBruteForceOn500Keys) {
  for (std::uint64_t seed : {1u, 2u}) {
    const LabeledVectors s = random_space(500, 50, seed);
    for (std::size_t c = 0; c < 500; c += 37) {
      expect_same(k_nearest(s, key_of(c), 10), brute_force(s, key_of(c), 10));
    }
  }
  const LabeledVectors ties = tie_heavy_space(500, 3);
  for (std::size_t c = 0; c < 500; c += 13) {
    expect_same(k_nearest(ties, key_of(c), 10), brute_force(ties, key_of(c), 10));
    expect_same(k_nearest(ties, key_of(c), 499), brute_force(ties, key_of(c), 499));
  }
}

TEST(KNearest, ExactDuplicateRanksFirst) {
  LabeledVectors s = random_space(200, 30, 4);
  s.add("copy", s.at(key_of(17)));
  const auto n = k_nearest(s, key_of(17), 10);
  EXPECT_EQ(n[0].key, "copy");
  EXPECT_DOUBLE_EQ(n[0].cosine, 1.0);
}

TEST(Neighborhoods, IdentitySpaceIsAllSamePosition) {
  const LabeledVectors s = random_space(100, 20, 5);
  std::vector<std::string> cores;
  for (std::size_t i = 0; i < 100; i += 5) cores.push_back(key_of(i));
  const auto r = classify_neighborhoods(s, s, cores, 10);
  EXPECT_EQ(r.fraction_same_position, 1.0);
  EXPECT_EQ(r.fraction_shifted, 0.0);
  EXPECT_EQ(r.fraction_disjoint, 0.0);
  EXPECT_EQ(r.cores.size(), 20u);
  for (const auto& c : r.cores) EXPECT_EQ(c.records.size(), 10u);
}

// Negating every vector leaves all cosines unchanged, so the inversion is
// applied to the core: its compressed neighbors are then its farthest keys.
TEST(Neighborhoods, NegatedCoreIsAllDisjoint) {
  const LabeledVectors s = random_space(100, 20, 6);
  std::size_t disjoint = 0, total = 0;
  for (std::size_t i = 0; i < 100; ++i) {
    const std::string core = key_of(i);
    const LabeledVectors flipped = with_negated(s, core);
    const std::vector<std::string> cores{core};
    const auto r = classify_neighborhoods(s, flipped, cores, 10);
    // Oracle: compressed top-10 are the original bottom-10, farthest first.
    auto all = brute_force(s, core, 99);
    std::vector<std::string> farthest;
    for (std::size_t j = 0; j < 10; ++j) farthest.push_back(all[98 - j].key);
    ASSERT_EQ(r.cores[0].compressed.size(), 10u);
    for (std::size_t j = 0; j < 10; ++j) EXPECT_EQ(r.cores[0].compressed[j].key, farthest[j]);
    EXPECT_EQ(r.fraction_disjoint, 1.0);
    disjoint += r.disjoint;
    total += r.same_position + r.shifted + r.disjoint;
  }
  EXPECT_EQ(disjoint, total);
}

TEST(Neighborhoods, FractionsSumToOneAndIgnoreCoreOrder) {
  const LabeledVectors a = random_space(150, 10, 7);
  RandomSource r(8);
  LabeledVectors b;
  for (const auto& e : a.entries()) b.add(e.key, e.vector + random_vector(r, 10) * 0.5);
  std::vector<std::string> cores;
  for (std::size_t i = 0; i < 150; i += 3) cores.push_back(key_of(i));
  const auto forward = classify_neighborhoods(a, b, cores, 10);
  std::reverse(cores.begin(), cores.end());
  cores.push_back(cores.front());
  const auto backward = classify_neighborhoods(a, b, cores, 10, 4);
  EXPECT_NEAR(forward.fraction_same_position + forward.fraction_shifted + forward.fraction_disjoint, 1.0, 1e-9);
  EXPECT_GT(forward.fraction_shifted, 0.0);
  EXPECT_GT(forward.fraction_disjoint, 0.0);
  EXPECT_EQ(format_neighborhood_report(forward), format_neighborhood_report(backward));
}

TEST(Neighborhoods, Errors) {
  const LabeledVectors a = random_space(20, 5, 9);
  const LabeledVectors b = random_space(21, 5, 9);
  const std::vector<std::string> cores{key_of(0)};
  EXPECT_THROW((void)classify_neighborhoods(a, b, cores, 10), ConfigError);
  const std::vector<std::string> missing{"nope"};
  EXPECT_THROW((void)classify_neighborhoods(a, a, missing, 10), ConfigError);
  EXPECT_THROW((void)classify_neighborhoods(a, a, {}, 10), ConfigError);
}

TEST(VocabularyNeighborhoods, WordLevelProjection) {
  const Codebook cb = build_default_codebook(300, 1);
  const SyntheticCorpus c = make_synthetic_corpus(cb, 300, 2);
  // A second usage of w0001 adds another composite key for the same word type.
  auto tokens = c.tokens;
  tokens.push_back({"W0001", "VB", std::nullopt});
  const auto vocab = build_vocabulary(tokens, c.table, cb);
  const std::vector<std::string> cores{"W0001", "w0002"};
  const auto r = classify_vocabulary_neighborhoods(vocab, c.table, cores, 10);
  ASSERT_EQ(r.cores.size(), 2u);
  EXPECT_EQ(r.cores[0].core, "w0001");
  for (const auto& core : r.cores) {
    EXPECT_EQ(core.original.size(), 10u);
    EXPECT_EQ(core.compressed.size(), 10u);
    for (const auto& n : core.original) EXPECT_NE(n.key, core.core);
    for (const auto& n : core.compressed) EXPECT_NE(n.key, core.core);
    EXPECT_EQ(core.original_plot.keys.size(), 11u);
    EXPECT_EQ(core.compressed_plot.cosines.size(), 11u);
  }
  EXPECT_NEAR(r.fraction_same_position + r.fraction_shifted + r.fraction_disjoint, 1.0, 1e-9);
  const std::vector<std::string> absent{"nosuchword"};
  EXPECT_THROW((void)classify_vocabulary_neighborhoods(vocab, c.table, absent, 10), ConfigError);
}

TEST(Orthogonality, IdenticalCopiesNeverBelowThreshold) {
  LabeledVectors s;
  for (int i = 0; i < 50; ++i) s.add(key_of(i), {0.3, -0.2, 0.9});
  const auto r = sample_orthogonality(s, 20, 0.25, 1);
  EXPECT_EQ(r.fraction_below, 0.0);
  EXPECT_EQ(r.histogram.back(), 20u);
}

TEST(Orthogonality, RandomVectorsMostlyOrthogonal) {
  const LabeledVectors s = random_space(10000, 300, 10);
  const auto r = sample_orthogonality(s, 5000, 0.25, 11, 4);
  EXPECT_EQ(r.sample_pairs, 5000u);
  EXPECT_FALSE(r.clamped);
  EXPECT_GE(r.fraction_below, 0.93);
  EXPECT_EQ(std::accumulate(r.histogram.begin(), r.histogram.end(), std::size_t{0}), 5000u);
  // 0.25 is a bucket edge, so the first five buckets hold exactly the pairs below it.
  EXPECT_EQ(r.histogram[0] + r.histogram[1] + r.histogram[2] + r.histogram[3] + r.histogram[4], r.below_threshold);
}

TEST(Orthogonality, ReproducibleAndClamped) {
  const LabeledVectors s = random_space(101, 20, 12);
  const auto a = sample_orthogonality(s, 1000, 0.25, 5);
  const auto b = sample_orthogonality(s, 1000, 0.25, 5, 3);
  EXPECT_TRUE(a.clamped);
  EXPECT_EQ(a.requested_pairs, 1000u);
  EXPECT_EQ(a.sample_pairs, 50u);
  EXPECT_EQ(format_orthogonality_report(a), format_orthogonality_report(b));
  EXPECT_NE(format_orthogonality_report(a), format_orthogonality_report(sample_orthogonality(s, 1000, 0.25, 6)));
  LabeledVectors one;
  one.add("x", {1, 2});
  EXPECT_THROW((void)sample_orthogonality(one, 1, 0.25, 1), ConfigError);
  EXPECT_THROW((void)sample_orthogonality(s, 0, 0.25, 1), ConfigError);
  EXPECT_THROW((void)sample_orthogonality(s, 10, 0.0, 1), ConfigError);
}

TEST(Orthogonality, ExhaustiveScanAndRefusal) {
  const LabeledVectors s = random_space(40, 300, 13);
  const auto r = exhaustive_orthogonality(s, 0.25);
  EXPECT_TRUE(r.exhaustive);
  EXPECT_EQ(r.sample_pairs, 780u);
  double max_abs = 0.0;
  for (std::size_t i = 0; i < 40; ++i) {
    for (std::size_t j = i + 1; j < 40; ++j) max_abs = std::max(max_abs, std::abs(cosine_similarity(s[i].vector, s[j].vector)));
  }
  EXPECT_NEAR(r.max_abs_cosine, max_abs, 1e-15);
  EXPECT_THROW((void)exhaustive_orthogonality(s, 0.25, 39), ConfigError);
}

TEST(Orthogonality, HistogramBuckets) {
  EXPECT_EQ(histogram_bucket(0.0), 0u);
  EXPECT_EQ(histogram_bucket(0.0499), 0u);
  EXPECT_EQ(histogram_bucket(0.05), 1u);
  EXPECT_EQ(histogram_bucket(0.25), 5u);
  EXPECT_EQ(histogram_bucket(0.99), 19u);
  EXPECT_EQ(histogram_bucket(1.0), 19u);
}

TEST(Reports, CarryDocumentedFields) {
  const LabeledVectors s = random_space(30, 8, 14);
  const auto o = nlohmann::json::parse(format_orthogonality_report(sample_orthogonality(s, 10, 0.25, 1)));
  for (const char* f : {"sample_pairs", "threshold", "fraction_below", "histogram", "seed"}) {
    EXPECT_TRUE(o.contains(f)) << f;
  }
  EXPECT_EQ(o["histogram"].size(), kHistogramBuckets);
  const std::vector<std::string> cores{key_of(1)};
  const auto n = nlohmann::json::parse(format_neighborhood_report(classify_neighborhoods(s, s, cores, 5)));
  for (const char* f : {"core_tokens", "k", "fractions", "cores", "reference_full_scale"}) {
    EXPECT_TRUE(n.contains(f)) << f;
  }
  const auto& rec = n["cores"][0]["neighbors"][0];
  for (const char* f : {"key", "rank_original", "rank_compressed", "class"}) EXPECT_TRUE(rec.contains(f)) << f;
}
