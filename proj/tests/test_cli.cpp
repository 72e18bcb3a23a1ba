#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "hrrembed/text_io.hpp"

namespace fs = std::filesystem;
using hrrembed::read_file;
using hrrembed::write_file_atomic;

namespace {

struct Result {
  int status;
  std::string output;
};

Result run(const std::string& args) {
  const std::string cmd = std::string("\"") + HRREMBED_CLI + "\" " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {-1, {}};
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("hrrembed_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return "\"" + (dir_ / name).string() + "\""; }
  static std::string data(const std::string& name) {
    return "\"" + (fs::path(HRREMBED_TEST_DATA) / name).string() + "\"";
  }
  static std::string fixture(const std::string& name) {
    return "\"" + (fs::path(HRREMBED_FIXTURE_DIR) / name).string() + "\"";
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, BuildCodebookDefaults) {
  const auto r = run("build-codebook " + path("cb.json"));
  ASSERT_EQ(r.status, 0) << r.output;
  EXPECT_NE(r.output.find("74 vectors"), std::string::npos);
  EXPECT_NE(r.output.find("max pairwise |cosine|"), std::string::npos);
  const auto doc = nlohmann::json::parse(read_file(dir_ / "cb.json"));
  EXPECT_EQ(doc["vectors"].size(), 74u);
  EXPECT_EQ(doc["dimension"], 300);
}

TEST_F(Cli, BuildCodebookUserTagLists) {
  const auto r = run("build-codebook --dim 16 --pos-tags " + data("fish/pos_tags.txt") + " --ner-types " +
                     data("fish/ner_types.txt") + " " + path("cb.json"));
  ASSERT_EQ(r.status, 0) << r.output;
  EXPECT_NE(r.output.find("12 vectors"), std::string::npos);
}

TEST_F(Cli, UnreadableTagFile) {
  const auto r = run("build-codebook --pos-tags " + path("missing.txt") + " " + path("cb.json"));
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.output.find("missing.txt"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir_ / "cb.json"));
}

TEST_F(Cli, CompressFish) {
  const auto r = run("compress " + data("fish/codebook.json") + " " + data("fish/embeddings.txt") + " " +
                     data("fish/annotations.tsv") + " " + path("v.txt"));
  ASSERT_EQ(r.status, 0) << r.output;
  EXPECT_NE(r.output.find("composite keys:      3"), std::string::npos);
  EXPECT_NE(r.output.find("growth factor:       3.0000"), std::string::npos);
  const auto meta = nlohmann::json::parse(read_file(dir_ / "v.txt.meta.json"));
  EXPECT_EQ(meta["entries"].size(), 3u);
  EXPECT_EQ(meta["entries"]["fishNNPPERSON"]["component_count"], 4);
}

TEST_F(Cli, CompressEmptyAnnotations) {
  write_file_atomic(dir_ / "empty.tsv", "");
  const auto r = run("compress " + data("fish/codebook.json") + " " + data("fish/embeddings.txt") + " " +
                     path("empty.tsv") + " " + path("v.txt"));
  ASSERT_EQ(r.status, 0) << r.output;
  EXPECT_NE(r.output.find("growth factor:       null"), std::string::npos);
  const auto meta = nlohmann::json::parse(read_file(dir_ / "v.txt.meta.json"));
  EXPECT_TRUE(meta["statistics"]["growth_factor"].is_null());
}

TEST_F(Cli, CompressDimensionMismatch) {
  ASSERT_EQ(run("build-codebook " + path("cb.json")).status, 0);
  std::string emb = "word";
  for (int i = 0; i < 50; ++i) emb += " 0.1";
  write_file_atomic(dir_ / "e50.txt", emb + "\n");
  const auto r = run("compress " + path("cb.json") + " " + path("e50.txt") + " " + data("fish/annotations.tsv") +
                     " " + path("v.txt"));
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.output.find("dimension mismatch"), std::string::npos);
  EXPECT_EQ(r.output.find('\n'), r.output.size() - 1) << "diagnostic should be one line";
  EXPECT_FALSE(fs::exists(dir_ / "v.txt"));
  EXPECT_FALSE(fs::exists(dir_ / "v.txt.meta.json"));
}

TEST_F(Cli, DecodeWithAndWithoutSidecar) {
  ASSERT_EQ(run("compress " + data("fish/codebook.json") + " " + data("fish/embeddings.txt") + " " +
                data("fish/annotations.tsv") + " " + path("v.txt"))
                .status,
            0);
  auto r = run("decode " + data("fish/codebook.json") + " " + path("v.txt") + " " + path("d.json"));
  ASSERT_EQ(r.status, 0) << r.output;
  EXPECT_NE(r.output.find("POS accuracy"), std::string::npos);

  fs::copy_file(dir_ / "v.txt", dir_ / "bare.txt");
  r = run("decode " + data("fish/codebook.json") + " " + path("bare.txt") + " " + path("d2.json"));
  ASSERT_EQ(r.status, 0) << r.output;
  EXPECT_EQ(r.output.find("accuracy"), std::string::npos);
  const auto doc = nlohmann::json::parse(read_file(dir_ / "d2.json"));
  EXPECT_EQ(doc["entries"].size(), 3u);
  EXPECT_TRUE(doc["pos_accuracy"].is_null());
}

TEST_F(Cli, DecodeCorruptedVocabulary) {
  ASSERT_EQ(run("compress " + data("fish/codebook.json") + " " + data("fish/embeddings.txt") + " " +
                data("fish/annotations.tsv") + " " + path("v.txt"))
                .status,
            0);
  std::string text = read_file(dir_ / "v.txt");
  const std::size_t line2 = text.find('\n') + 1;
  const std::size_t end2 = text.find('\n', line2);
  const std::size_t cut = text.rfind(' ', end2);
  text.erase(cut, end2 - cut);
  write_file_atomic(dir_ / "bad.txt", text);
  const auto r = run("decode " + data("fish/codebook.json") + " " + path("bad.txt") + " " + path("d.json"));
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.output.find("line 2"), std::string::npos) << r.output;
  EXPECT_FALSE(fs::exists(dir_ / "d.json"));
}

TEST_F(Cli, DecodeSyntheticSelfCheck) {
  const auto r = run("decode --synthetic --report " + path("syn.json"));
  EXPECT_EQ(r.status, 0) << r.output;
  EXPECT_NE(r.output.find("PASS pos-accuracy"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "syn.json"));
}

TEST_F(Cli, AnalyzeFixture) {
  ASSERT_EQ(run("build-codebook " + path("cb.json")).status, 0);
  ASSERT_EQ(run("compress " + path("cb.json") + " " + fixture("wiki5k.glove.txt") + " " +
                fixture("wiki5k.annotations.tsv") + " " + path("v.txt"))
                .status,
            0);
  auto r = run("analyze orthogonality --sample-size 5000 " + path("v.txt") + " " + path("o.json"));
  ASSERT_EQ(r.status, 0) << r.output;
  const auto o = nlohmann::json::parse(read_file(dir_ / "o.json"));
  EXPECT_EQ(o["sample_pairs"], 2900);  // 5801 keys, clamped to half
  EXPECT_TRUE(o["clamped"].get<bool>());
  EXPECT_EQ(o["histogram"].size(), 20u);

  write_file_atomic(dir_ / "cores.txt",
                    "city\nwar\nking\nmusic\nlanguage\nriver\nchurch\nscience\nfootball\nmoney\nwater\n"
                    "government\narmy\nfilm\nschool\ngreen\nsaid\nfirst\nworld\nFrench\n");
  r = run("analyze neighborhoods " + path("v.txt") + " " + fixture("wiki5k.glove.txt") + " " + path("cores.txt") +
          " " + path("n.json"));
  ASSERT_EQ(r.status, 0) << r.output;
  const auto n = nlohmann::json::parse(read_file(dir_ / "n.json"));
  EXPECT_EQ(n["core_tokens"].size(), 20u);
  const double sum = n["fractions"]["same_position"].get<double>() + n["fractions"]["shifted"].get<double>() +
                     n["fractions"]["disjoint"].get<double>();
  EXPECT_NEAR(sum, 1.0, 1e-9);

  write_file_atomic(dir_ / "absent.txt", "city\nxylophonist\n");
  r = run("analyze neighborhoods " + path("v.txt") + " " + fixture("wiki5k.glove.txt") + " " + path("absent.txt") +
          " " + path("n2.json"));
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.output.find("xylophonist"), std::string::npos);
}

TEST_F(Cli, SelfTest) {
  const auto r = run("self-test");
  EXPECT_EQ(r.status, 0) << r.output;
  EXPECT_EQ(r.output.find("FAIL"), std::string::npos) << r.output;
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run("").status, 1);
  EXPECT_EQ(run("no-such-command").status, 1);
  EXPECT_EQ(run("--help").status, 0);
}
