#include "cskge/vector_table.hpp"

#include <cmath>
#include <fstream>
#include <unordered_set>

#include "cskge/error.hpp"

namespace cskge {

VectorTable::VectorTable(Index dim) : dim_(dim), dim_fixed_(true) {
  if (dim <= 0) throw_error(ErrorCategory::Domain, "vector table dimension must be positive");
}

std::optional<int> VectorTable::find(std::string_view key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const std::string& VectorTable::key(int row) const {
  if (row < 0 || row >= size())
    throw_error(ErrorCategory::Domain, "vector table row out of range: " + std::to_string(row));
  return keys_[static_cast<std::size_t>(row)];
}

Eigen::Map<const RowVector> VectorTable::row(int i) const {
  if (i < 0 || i >= size())
    throw_error(ErrorCategory::Domain, "vector table row out of range: " + std::to_string(i));
  return {data_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(dim_), dim_};
}

void VectorTable::insert(std::string key, const RowVector& v) {
  if (contains(key)) throw_error(ErrorCategory::Domain, "duplicate vector key: " + key);
  if (dim_fixed_ || !keys_.empty()) {
    if (v.size() != dim_)
      throw_error(ErrorCategory::Domain, "vector dimension mismatch for key '" + key + "': expected " +
                                             std::to_string(dim_) + ", got " + std::to_string(v.size()));
  } else {
    if (v.size() <= 0) throw_error(ErrorCategory::Domain, "vector for key '" + key + "' is empty");
    dim_ = v.size();
  }
  if (!v.allFinite())
    throw_error(ErrorCategory::Domain, "non-finite component in vector for key '" + key + "'");
  int id = size();
  keys_.push_back(std::move(key));
  index_.emplace(keys_.back(), id);
  data_.insert(data_.end(), v.data(), v.data() + v.size());
}

void VectorTable::set_row(int i, const RowVector& v) {
  if (i < 0 || i >= size())
    throw_error(ErrorCategory::Domain, "vector table row out of range: " + std::to_string(i));
  if (v.size() != dim_) throw_error(ErrorCategory::Domain, "vector dimension mismatch in set_row");
  if (!v.allFinite()) throw_error(ErrorCategory::Domain, "non-finite component in set_row");
  std::copy(v.data(), v.data() + v.size(), data_.begin() + static_cast<std::ptrdiff_t>(i) * dim_);
}

VectorTable load_vector_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw_error(ErrorCategory::Io, "cannot open vector file: " + path.string());

  VectorTable table;
  std::string line;
  std::size_t lineno = 0;
  bool first_line = true;
  long long expected_count = -1, expected_dim = -1;

  while (std::getline(in, line)) {
    ++lineno;
    auto tokens = split_whitespace(line);
    if (first_line) {
      first_line = false;
      if (tokens.size() == 2) {
        auto c = parse_int(tokens[0]);
        auto d = parse_int(tokens[1]);
        if (c && d) {
          if (*c < 0 || *d <= 0) throw_parse(path.string(), lineno, "invalid header counts");
          expected_count = *c;
          expected_dim = *d;
          continue;
        }
      }
    }
    if (tokens.empty()) continue;
    if (tokens.size() < 2)
      throw_parse(path.string(), lineno, "record needs a key and at least one component");

    const Index d = static_cast<Index>(tokens.size()) - 1;
    if (expected_dim >= 0 && d != expected_dim)
      throw_parse(path.string(), lineno,
                  "expected " + std::to_string(expected_dim) + " components, got " + std::to_string(d));
    if (!table.empty() && d != table.dim())
      throw_parse(path.string(), lineno,
                  "expected " + std::to_string(table.dim()) + " components, got " + std::to_string(d));

    RowVector v(d);
    for (Index j = 0; j < d; ++j) {
      auto x = parse_real(tokens[static_cast<std::size_t>(j) + 1]);
      if (!x || !std::isfinite(*x))
        throw_parse(path.string(), lineno,
                    "non-numeric component '" + std::string(tokens[static_cast<std::size_t>(j) + 1]) + "'");
      v[j] = *x;
    }
    std::string key(tokens[0]);
    if (table.contains(key)) throw_parse(path.string(), lineno, "duplicate key '" + key + "'");
    table.insert(std::move(key), v);
  }

  if (table.empty()) throw_error(ErrorCategory::Parse, "no vector records in file: " + path.string());
  if (expected_count >= 0 && table.size() != expected_count)
    throw_error(ErrorCategory::Parse, path.string() + ": header declares " +
                                          std::to_string(expected_count) + " records, found " +
                                          std::to_string(table.size()));
  return table;
}

void save_vector_file(const std::filesystem::path& path, const VectorTable& table) {
  std::ofstream out(path);
  if (!out) throw_error(ErrorCategory::Io, "cannot write vector file: " + path.string());
  out << table.size() << ' ' << table.dim() << '\n';
  for (int i = 0; i < table.size(); ++i) {
    out << table.key(i);
    auto r = table.row(i);
    for (Index j = 0; j < table.dim(); ++j) out << ' ' << format_exact(r[j]);
    out << '\n';
  }
  if (!out) throw_error(ErrorCategory::Io, "write failed: " + path.string());
}

std::optional<RowVector> phrase_vector(std::string_view phrase, const VectorTable& table) {
  RowVector sum = RowVector::Zero(table.dim());
  int found = 0;
  std::size_t i = 0;
  auto is_gap = [](char c) {
    return c == '_' || c == ' ' || c == '\t' || c == '\r' || c == '\n';
  };
  while (i < phrase.size()) {
    while (i < phrase.size() && is_gap(phrase[i])) ++i;
    std::size_t start = i;
    while (i < phrase.size() && !is_gap(phrase[i])) ++i;
    if (i == start) continue;
    if (auto row = table.find(phrase.substr(start, i - start))) {
      sum += table.row(*row);
      ++found;
    }
  }
  if (found == 0) return std::nullopt;
  return sum / found;
}

std::vector<InstanceList> load_instance_lists(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw_error(ErrorCategory::Io, "cannot open instance list file: " + path.string());

  std::vector<InstanceList> lists;
  std::unordered_map<std::string, std::size_t> by_concept;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv = trim(line);
    if (sv.empty() || sv.front() == '#') continue;
    auto fields = split_on(sv, '\t');
    if (fields.size() != 2)
      throw_parse(path.string(), lineno,
                  "expected 2 tab-separated fields, got " + std::to_string(fields.size()));
    std::string concept_label = normalize_label(fields[0]);
    if (concept_label.empty()) throw_parse(path.string(), lineno, "empty concept label");

    std::vector<std::string> instances;
    for (std::string_view part : split_on(fields[1], '|')) {
      std::string inst = normalize_label(part);
      if (inst.empty()) throw_parse(path.string(), lineno, "empty instance label");
      instances.push_back(std::move(inst));
    }
    if (instances.empty()) throw_parse(path.string(), lineno, "concept has no instances");

    auto it = by_concept.find(concept_label);
    if (it == by_concept.end()) {
      by_concept.emplace(concept_label, lists.size());
      lists.push_back(InstanceList{std::move(concept_label), std::move(instances)});
    } else {
      auto& existing = lists[it->second].instances;
      for (auto& inst : instances)
        if (std::find(existing.begin(), existing.end(), inst) == existing.end())
          existing.push_back(std::move(inst));
    }
  }
  return lists;
}

VectorTable build_common_knowledge(const std::vector<InstanceList>& lists,
                                   const VectorTable& words) {
  VectorTable out(words.dim());
  for (const auto& list : lists) {
    RowVector sum = RowVector::Zero(words.dim());
    int resolved = 0;
    for (const auto& inst : list.instances) {
      if (auto v = phrase_vector(inst, words)) {
        sum += *v;
        ++resolved;
      }
    }
    if (resolved > 0) out.insert(list.concept_label, sum / resolved);
  }
  return out;
}

}  // namespace cskge
