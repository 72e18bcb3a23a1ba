#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hrrembed/embedding_table.hpp"
#include "hrrembed/error.hpp"

using namespace hrrembed;
namespace fs = std::filesystem;

TEST(ReadGlove, InfersDimensionFromFirstRow) {
  std::istringstream in("the 0.1 0.2 0.3\nof -1 2e-1 3\n\nand 0 0 0\n");
  const EmbeddingTable t = read_glove(in);
  EXPECT_EQ(t.dimension(), 3u);
  EXPECT_EQ(t.size(), 3u);
  EXPECT_EQ(*t.find("of"), (DenseVector{-1, 0.2, 3}));
  EXPECT_EQ(t.find("missing"), nullptr);
}

TEST(ReadGlove, CaseSensitiveKeys) {
  std::istringstream in("IBM 1 0\nibm 0 1\n");
  const EmbeddingTable t = read_glove(in);
  EXPECT_EQ(*t.find("IBM"), (DenseVector{1, 0}));
  EXPECT_EQ(*t.find("ibm"), (DenseVector{0, 1}));
}

TEST(ReadGlove, SurfaceWithSpacesWhenDimensionKnown) {
  std::istringstream in(". . . 0.5 0.25\nat name@domain.com 1 2\n");
  GloveReadOptions o;
  o.dimension = 2;
  const EmbeddingTable t = read_glove(in, o);
  EXPECT_EQ(*t.find(". . ."), (DenseVector{0.5, 0.25}));
  EXPECT_EQ(*t.find("at name@domain.com"), (DenseVector{1, 2}));
}

TEST(ReadGlove, ErrorsCarryLineNumbers) {
  std::istringstream short_row("a 1 2 3\nb 1 2\n");
  try {
    (void)read_glove(short_row);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream junk("a 1 2\n\nb 1 x\n");
  try {
    (void)read_glove(junk);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("'x'"), std::string::npos);
  }
  std::istringstream nan_row("a 1 nan\n");
  EXPECT_THROW((void)read_glove(nan_row), ParseError);
  std::istringstream empty("");
  EXPECT_THROW((void)read_glove(empty), ParseError);
}

TEST(ReadGlove, DuplicatesKeepFirstOrConflict) {
  std::istringstream dup("a 1 2\na 3 4\n");
  const EmbeddingTable t = read_glove(dup);
  EXPECT_EQ(*t.find("a"), (DenseVector{1, 2}));
  EXPECT_EQ(t.skipped_duplicates(), 1u);

  GloveReadOptions strict;
  strict.reject_conflicting_duplicates = true;
  std::istringstream same("a 1 2\na 1 2\n");
  EXPECT_EQ(read_glove(same, strict).size(), 1u);
  std::istringstream conflict("a 1 2\na 3 4\n");
  EXPECT_THROW((void)read_glove(conflict, strict), IntegrityError);
}

TEST(ReadGlove, MaxRows) {
  std::istringstream in("a 1\nb 2\nc 3\n");
  GloveReadOptions o;
  o.max_rows = 2;
  EXPECT_EQ(read_glove(in, o).size(), 2u);
}

TEST(GloveFormat, RoundTrip) {
  LabeledVectors v;
  v.add("x", {0.1, -2.5e-7});
  v.add("y", {1.0 / 3.0, 4});
  std::istringstream in(format_glove(v));
  EXPECT_EQ(read_glove(in).vectors(), v);
}

TEST(GloveFile, PeekDimensionAndMissingFile) {
  const fs::path p = fs::temp_directory_path() / "hrrembed_glove_peek.txt";
  {
    std::ofstream out(p);
    out << "\nword 1 2 3 4\n";
  }
  EXPECT_EQ(peek_glove_dimension(p), 4u);
  EXPECT_EQ(read_glove_file(p).dimension(), 4u);
  fs::remove(p);
  EXPECT_THROW((void)read_glove_file(p), Error);
}

TEST(EmbeddingTable, AddChecksDimension) {
  EmbeddingTable t(2);
  t.add("a", {1, 2});
  EXPECT_THROW(t.add("b", {1, 2, 3}), DimensionMismatch);
  EXPECT_THROW(t.add("a", {1, 2}), ConfigError);
  EXPECT_THROW(EmbeddingTable(0), ConfigError);
}
