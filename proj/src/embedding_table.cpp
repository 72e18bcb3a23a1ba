#include "hrrembed/embedding_table.hpp"

#include <fstream>
#include <vector>

#include "hrrembed/error.hpp"
#include "hrrembed/text_io.hpp"

namespace hrrembed {

EmbeddingTable::EmbeddingTable(std::size_t dimension) : dimension_(dimension) {
  if (dimension == 0) throw ConfigError("embedding dimension must be positive");
}

void EmbeddingTable::add(std::string surface, DenseVector vector) {
  if (vector.size() != dimension_) throw DimensionMismatch(dimension_, vector.size(), "embedding '" + surface + "'");
  vectors_.add(std::move(surface), std::move(vector));
}

bool EmbeddingTable::add_if_absent(std::string surface, DenseVector vector) {
  if (vector.size() != dimension_) throw DimensionMismatch(dimension_, vector.size(), "embedding '" + surface + "'");
  if (vectors_.try_add(std::move(surface), std::move(vector))) return true;
  ++skipped_duplicates_;
  return false;
}

namespace {

void split_spaces(std::string_view line, std::vector<std::string_view>& fields) {
  fields.clear();
  std::size_t pos = 0;
  while (pos <= line.size()) {
    const std::size_t next = line.find(' ', pos);
    const std::size_t end = next == std::string_view::npos ? line.size() : next;
    fields.push_back(line.substr(pos, end - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
}

}  // namespace

EmbeddingTable read_glove(std::istream& in, const GloveReadOptions& options) {
  std::optional<EmbeddingTable> table;
  if (options.dimension) table.emplace(*options.dimension);
  std::string line;
  std::vector<std::string_view> fields;
  std::size_t line_no = 0;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim_right(line);
    if (text.empty()) continue;
    split_spaces(text, fields);
    if (!table) {
      if (fields.size() < 2) throw ParseError("expected a word followed by numbers", line_no);
      table.emplace(fields.size() - 1);
    }
    const std::size_t dim = table->dimension();
    if (fields.size() < dim + 1) {
      throw ParseError("expected " + std::to_string(dim) + " values, found " + std::to_string(fields.size() - 1),
                       line_no);
    }
    const std::size_t first_value = fields.size() - dim;
    // Surface is every field before the vector, rejoined with the original separators.
    const std::string_view surface =
        text.substr(0, static_cast<std::size_t>(fields[first_value - 1].data() + fields[first_value - 1].size() -
                                                text.data()));
    if (surface.empty()) throw ParseError("empty surface form", line_no);
    std::vector<double> values(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      const auto v = parse_double(fields[first_value + i]);
      if (!v) {
        throw ParseError("field " + std::to_string(first_value + i + 1) + " is not a finite number: '" +
                             std::string(fields[first_value + i]) + "'",
                         line_no);
      }
      values[i] = *v;
    }
    DenseVector vector(std::move(values));
    if (options.reject_conflicting_duplicates) {
      const DenseVector* existing = table->find(surface);
      if (existing != nullptr && !(*existing == vector)) {
        throw IntegrityError("line " + std::to_string(line_no) + ": '" + std::string(surface) +
                             "' repeats with a different vector");
      }
    }
    table->add_if_absent(std::string(surface), std::move(vector));
    if (options.max_rows != 0 && ++rows >= options.max_rows) break;
  }
  if (in.bad()) throw Error("read error in embedding input");
  if (!table) throw ParseError("embedding input is empty");
  return std::move(*table);
}

EmbeddingTable read_glove_file(const std::filesystem::path& path, const GloveReadOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  try {
    return read_glove(in, options);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const IntegrityError& e) {
    throw IntegrityError(path.string() + ": " + e.what());
  }
}

std::size_t peek_glove_dimension(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  std::string line;
  while (std::getline(in, line)) {
    const std::string_view text = trim_right(line);
    if (text.empty()) continue;
    std::vector<std::string_view> fields;
    split_spaces(text, fields);
    if (fields.size() < 2) throw ParseError(path.string() + ": first record has no values");
    return fields.size() - 1;
  }
  throw ParseError(path.string() + ": embedding file is empty");
}

std::string format_glove(const LabeledVectors& vectors) {
  std::string out;
  out.reserve(vectors.size() * (vectors.dimension() * 20 + 16));
  for (const auto& entry : vectors.entries()) {
    out += entry.key;
    for (double x : entry.vector) {
      out.push_back(' ');
      append_double(out, x);
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace hrrembed
