#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "hrrembed/error.hpp"
#include "hrrembed/random.hpp"
#include "hrrembed/text_io.hpp"

using namespace hrrembed;
namespace fs = std::filesystem;

TEST(TextIo, DoubleRoundTripsExactly) {
  RandomSource r(9);
  for (int i = 0; i < 10000; ++i) {
    const double x = (r.uniform() - 0.5) * std::pow(10.0, static_cast<double>(r.uniform_index(40)) - 20.0);
    const auto back = parse_double(format_double(x));
    ASSERT_TRUE(back);
    ASSERT_EQ(*back, x);
  }
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(-2.0), "-2");
}

TEST(TextIo, ParseDoubleRejectsJunk) {
  EXPECT_FALSE(parse_double(""));
  EXPECT_FALSE(parse_double("1.5x"));
  EXPECT_FALSE(parse_double("abc"));
  EXPECT_FALSE(parse_double("nan"));
  EXPECT_FALSE(parse_double("inf"));
  EXPECT_FALSE(parse_double("1e999"));
  EXPECT_EQ(parse_double("-1.25e-3"), -1.25e-3);
}

TEST(TextIo, Lowercase) {
  EXPECT_EQ(to_lower_utf8("IBM"), "ibm");
  EXPECT_EQ(to_lower_utf8("Fish"), "fish");
  EXPECT_EQ(to_lower_utf8("ÉCOLE"), "école");
  EXPECT_EQ(to_lower_utf8("ΑΘΗΝΑ"), "αθηνα");
  EXPECT_EQ(to_lower_utf8("МОСКВА"), "москва");
  EXPECT_EQ(to_lower_utf8("Łódź"), "łódź");
  EXPECT_EQ(to_lower_utf8("東京"), "東京");
  EXPECT_EQ(to_lower_utf8("\xff\xfe"), "\xff\xfe");
}

TEST(TextIo, TrimRight) {
  EXPECT_EQ(trim_right("abc \t\r"), "abc");
  EXPECT_EQ(trim_right("  "), "");
  EXPECT_EQ(trim_right(" a"), " a");
}

TEST(TextIo, AtomicWriteReplacesAndLeavesNoTemporaries) {
  const fs::path dir = fs::temp_directory_path() / "hrrembed_text_io_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path target = dir / "out.txt";
  write_file_atomic(target, "first");
  write_file_atomic(target, "second");
  EXPECT_EQ(read_file(target), "second");
  EXPECT_EQ(std::distance(fs::directory_iterator(dir), fs::directory_iterator{}), 1);
  EXPECT_THROW(write_file_atomic(dir / "missing" / "x.txt", "data"), Error);
  EXPECT_THROW((void)read_file(dir / "nope.txt"), Error);
  fs::remove_all(dir);
}
