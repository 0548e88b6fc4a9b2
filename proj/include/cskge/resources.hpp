#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string_view>
#include <vector>

#include "cskge/knowledge_graph.hpp"
#include "cskge/types.hpp"
#include "cskge/vector_table.hpp"

namespace cskge {

enum class SemanticClass { Text = 0, Affect = 1, CommonKnowledge = 2 };

inline constexpr int kNumClasses = 3;
inline constexpr std::array<SemanticClass, kNumClasses> kAllClasses = {
    SemanticClass::Text, SemanticClass::Affect, SemanticClass::CommonKnowledge};

const char* class_tag(SemanticClass c);
std::optional<SemanticClass> parse_class_tag(std::string_view tag);

// Small set of semantic classes, bitmask-backed.
class ClassSet {
 public:
  ClassSet() = default;
  ClassSet(std::initializer_list<SemanticClass> classes) {
    for (auto c : classes) insert(c);
  }
  static ClassSet all() { return {SemanticClass::Text, SemanticClass::Affect, SemanticClass::CommonKnowledge}; }

  void insert(SemanticClass c) { bits_ |= bit(c); }
  bool contains(SemanticClass c) const { return bits_ & bit(c); }
  bool empty() const { return bits_ == 0; }
  int count() const;
  bool operator==(const ClassSet&) const = default;

 private:
  static unsigned bit(SemanticClass c) { return 1u << static_cast<int>(c); }
  unsigned bits_ = 0;
};

// Per-class semantic vectors for every graph concept, stored densely as a
// |C| x k matrix plus a coverage flag per concept. Uncovered rows are zero.
class SemanticResourceSet {
 public:
  SemanticResourceSet() = default;

  // Matches table keys against concept labels; a nullptr table means the
  // class is absent. All present tables must share one dimension.
  static SemanticResourceSet bind(const KnowledgeGraph& graph,
                                  const std::array<const VectorTable*, kNumClasses>& tables);

  void set_class(SemanticClass c, Matrix vectors, std::vector<std::uint8_t> coverage);

  bool has(SemanticClass c) const { return data_[idx(c)].present; }
  ClassSet classes() const;
  Index dim() const { return dim_; }
  int concept_count() const { return concept_count_; }

  bool covered(SemanticClass c, int concept_id) const;
  int coverage_count(SemanticClass c) const;
  const Matrix& vectors(SemanticClass c) const;
  Matrix& mutable_vectors(SemanticClass c);
  const std::vector<std::uint8_t>& coverage(SemanticClass c) const;

 private:
  static std::size_t idx(SemanticClass c) { return static_cast<std::size_t>(c); }
  void require(SemanticClass c) const;

  struct ClassData {
    Matrix vectors;
    std::vector<std::uint8_t> coverage;
    bool present = false;
  };
  std::array<ClassData, kNumClasses> data_;
  Index dim_ = 0;
  int concept_count_ = -1;
};

struct RestrictResult {
  KnowledgeGraph graph;
  SemanticResourceSet resources;
};

// Keeps only concepts covered by every present class, drops triples touching
// removed concepts, re-indexes both vocabularies densely (relations left with
// no triples disappear) and remaps the resource rows to the new ids.
RestrictResult restrict_to_covered(const KnowledgeGraph& graph,
                                   const SemanticResourceSet& resources);

}  // namespace cskge
