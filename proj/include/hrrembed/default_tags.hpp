#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace hrrembed {

// Fine-grained English POS tagset (Penn Treebank plus the OntoNotes additions
// emitted by common taggers), 50 entries.
[[nodiscard]] const std::vector<std::string>& default_pos_tags();

// OntoNotes named-entity types plus MISC, 19 entries.
[[nodiscard]] const std::vector<std::string>& default_ner_types();

// One tag per line. Trailing whitespace and CR are stripped; blank lines are
// skipped. Throws Error naming the path when the file cannot be read.
[[nodiscard]] std::vector<std::string> read_tag_list(const std::filesystem::path& path);

}  // namespace hrrembed
