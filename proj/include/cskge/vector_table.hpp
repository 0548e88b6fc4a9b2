#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cskge/types.hpp"
#include "cskge/util.hpp"

namespace cskge {

// Keyed collection of equal-length real vectors backed by one contiguous
// buffer, viewable as an Eigen matrix with one row per key.
class VectorTable {
 public:
  VectorTable() = default;
  // Fixes the dimension up front; useful for tables that may stay empty.
  explicit VectorTable(Index dim);

  Index dim() const { return dim_; }
  int size() const { return static_cast<int>(keys_.size()); }
  bool empty() const { return keys_.empty(); }

  bool contains(std::string_view key) const { return index_.find(key) != index_.end(); }
  std::optional<int> find(std::string_view key) const;
  const std::string& key(int row) const;
  const std::vector<std::string>& keys() const { return keys_; }

  Eigen::Map<const Matrix> vectors() const {
    return {data_.data(), size(), dim_};
  }
  Eigen::Map<const RowVector> row(int i) const;

  // Appends a key/vector pair. Duplicate key, dimension mismatch or a
  // non-finite component is a domain error.
  void insert(std::string key, const RowVector& v);
  void set_row(int i, const RowVector& v);

 private:
  std::vector<std::string> keys_;
  std::unordered_map<std::string, int, StringHash, std::equal_to<>> index_;
  std::vector<Real> data_;
  Index dim_ = 0;
  bool dim_fixed_ = false;
};

// Text format: optional first line "<count> <dim>" (two integer tokens), then
// one record per line: key followed by dim whitespace-separated floats.
// Keys are taken literally; blank lines are skipped.
VectorTable load_vector_file(const std::filesystem::path& path);
void save_vector_file(const std::filesystem::path& path, const VectorTable& table);

// Mean of the vectors of all tokens of `phrase` (split on '_'/whitespace)
// present in `table`; nullopt when no token resolves.
std::optional<RowVector> phrase_vector(std::string_view phrase, const VectorTable& table);

struct InstanceList {
  std::string concept_label;
  std::vector<std::string> instances;
};

// One record per line: "concept<TAB>instance1|instance2|...". Labels are
// normalized; '#' comment lines are skipped; duplicate concepts merge.
std::vector<InstanceList> load_instance_lists(const std::filesystem::path& path);

// Per-concept mean of the phrase vectors of its resolvable instances.
// Concepts with no resolvable instance are left out of the result.
VectorTable build_common_knowledge(const std::vector<InstanceList>& lists,
                                   const VectorTable& words);

}  // namespace cskge
