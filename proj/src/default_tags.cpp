#include "hrrembed/default_tags.hpp"

#include <sstream>

#include "hrrembed/error.hpp"
#include "hrrembed/text_io.hpp"

namespace hrrembed {

const std::vector<std::string>& default_pos_tags() {
  static const std::vector<std::string> tags = {
      "$",   "''",  ",",   "-LRB-", "-RRB-", ".",   ":",    "ADD", "AFX", "CC",
      "CD",  "DT",  "EX",  "FW",    "HYPH",  "IN",  "JJ",   "JJR", "JJS", "LS",
      "MD",  "NFP", "NN",  "NNP",   "NNPS",  "NNS", "PDT",  "POS", "PRP", "PRP$",
      "RB",  "RBR", "RBS", "RP",    "SYM",   "TO",  "UH",   "VB",  "VBD", "VBG",
      "VBN", "VBP", "VBZ", "WDT",   "WP",    "WP$", "WRB",  "XX",  "_SP", "``"};
  return tags;
}

const std::vector<std::string>& default_ner_types() {
  static const std::vector<std::string> types = {
      "PERSON",  "NORP",     "FAC",  "ORG",     "GPE",      "LOC",     "PRODUCT",
      "EVENT",   "WORK_OF_ART", "LAW", "LANGUAGE", "DATE",  "TIME",    "PERCENT",
      "MONEY",   "QUANTITY", "ORDINAL", "CARDINAL", "MISC"};
  return types;
}

std::vector<std::string> read_tag_list(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  std::vector<std::string> tags;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    const std::string_view tag = trim_right(line);
    if (!tag.empty()) tags.emplace_back(tag);
  }
  return tags;
}

}  // namespace hrrembed
