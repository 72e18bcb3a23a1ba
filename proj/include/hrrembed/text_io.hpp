#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace hrrembed {

// Whole file as bytes. Throws Error naming the path on failure.
[[nodiscard]] std::string read_file(const std::filesystem::path& path);

// Writes to a sibling temporary file and renames it over `path`, so a failed
// run never leaves a partial file behind.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

// Shortest decimal rendering that parses back to the identical double.
[[nodiscard]] std::string format_double(double value);
void append_double(std::string& out, double value);

// Full-field parse of a decimal number; nullopt on junk, overflow or a non-finite value.
[[nodiscard]] std::optional<double> parse_double(std::string_view text);

// Lowercases ASCII plus the Latin-1, Latin Extended-A, Greek and Cyrillic
// capitals; everything else (including malformed UTF-8) passes through.
[[nodiscard]] std::string to_lower_utf8(std::string_view text);

// Strips trailing spaces, tabs and CR.
[[nodiscard]] std::string_view trim_right(std::string_view text);

}  // namespace hrrembed
