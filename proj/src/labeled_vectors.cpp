#include "hrrembed/labeled_vectors.hpp"

#include <algorithm>
#include <cmath>

#include "hrrembed/error.hpp"

namespace hrrembed {

void LabeledVectors::add(std::string key, DenseVector vector) {
  std::string name = key;
  if (!try_add(std::move(key), std::move(vector))) throw ConfigError("duplicate key '" + name + "'");
}

bool LabeledVectors::try_add(std::string key, DenseVector vector) {
  if (key.empty()) throw ConfigError("empty key");
  if (!entries_.empty() && vector.size() != dimension()) {
    throw DimensionMismatch(dimension(), vector.size(), "entry '" + key + "'");
  }
  auto [it, inserted] = index_.try_emplace(key, entries_.size());
  if (!inserted) return false;
  entries_.push_back(Entry{std::move(key), std::move(vector)});
  return true;
}

bool LabeledVectors::contains(std::string_view key) const { return index_.find(key) != index_.end(); }

const DenseVector* LabeledVectors::find(std::string_view key) const {
  auto it = index_.find(key);
  return it == index_.end() ? nullptr : &entries_[it->second].vector;
}

const DenseVector& LabeledVectors::at(std::string_view key) const {
  const DenseVector* v = find(key);
  if (v == nullptr) throw ConfigError("unknown key '" + std::string(key) + "'");
  return *v;
}

std::size_t LabeledVectors::index_of(std::string_view key) const {
  auto it = index_.find(key);
  if (it == index_.end()) throw ConfigError("unknown key '" + std::string(key) + "'");
  return it->second;
}

std::vector<std::string> LabeledVectors::keys() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const Entry& e : entries_) out.push_back(e.key);
  return out;
}

CleanupResult cleanup(const DenseVector& query, const LabeledVectors& candidates) {
  if (candidates.empty()) throw Error("cleanup: empty candidate set");
  if (query.size() != candidates.dimension()) {
    throw DimensionMismatch(candidates.dimension(), query.size(), "cleanup");
  }
  const double query_norm = norm(query);
  if (query_norm == 0.0) throw DegenerateVector("cleanup: zero-norm query");

  const LabeledVectors::Entry* best = nullptr;
  double best_similarity = -2.0;
  for (const auto& entry : candidates.entries()) {
    const double entry_norm = norm(entry.vector);
    // A zero candidate matches nothing; it can only win when every candidate is zero.
    const double similarity =
        entry_norm == 0.0 ? -1.0 : std::clamp(dot(query, entry.vector) / (query_norm * entry_norm), -1.0, 1.0);
    if (best == nullptr || similarity > best_similarity ||
        (similarity == best_similarity && entry.key < best->key)) {
      best = &entry;
      best_similarity = similarity;
    }
  }
  return CleanupResult{best->key, best_similarity};
}

}  // namespace hrrembed
