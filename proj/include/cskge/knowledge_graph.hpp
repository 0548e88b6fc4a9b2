#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "cskge/types.hpp"

namespace cskge {

// Dense label<->id map; ids are contiguous and assigned in first-seen order.
class Vocabulary {
 public:
  int add(const std::string& label);
  std::optional<int> find(const std::string& label) const;
  const std::string& label(int id) const;
  int size() const { return static_cast<int>(labels_.size()); }
  bool valid(int id) const { return id >= 0 && id < size(); }
  // Order-sensitive hash over all labels; two vocabularies match iff equal.
  std::uint64_t content_hash() const;

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> index_;
};

struct Triple {
  std::int32_t head = 0;
  std::int32_t rel = 0;
  std::int32_t tail = 0;

  friend bool operator==(const Triple&, const Triple&) = default;
};

struct TripleHash {
  std::size_t operator()(const Triple& t) const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::uint64_t v : {static_cast<std::uint64_t>(static_cast<std::uint32_t>(t.head)),
                            static_cast<std::uint64_t>(static_cast<std::uint32_t>(t.rel)),
                            static_cast<std::uint64_t>(static_cast<std::uint32_t>(t.tail))}) {
      h ^= v;
      h *= 0x100000001b3ull;
    }
    return static_cast<std::size_t>(h);
  }
};

using TripleSet = std::unordered_set<Triple, TripleHash>;

struct SplitRatios {
  Real train = 0.6;
  Real valid = 0.2;
  Real test = 0.2;
};

// Concept/relation vocabularies plus train/valid/test triples and a
// membership index over their union. Immutable once built; concurrent
// reads are safe.
class KnowledgeGraph {
 public:
  KnowledgeGraph() = default;

  // Validates ids, pairwise disjointness and per-split uniqueness.
  static KnowledgeGraph make(Vocabulary concepts, Vocabulary relations,
                             std::vector<Triple> train, std::vector<Triple> valid,
                             std::vector<Triple> test);

  const Vocabulary& concepts() const { return concepts_; }
  const Vocabulary& relations() const { return relations_; }
  const std::vector<Triple>& train() const { return train_; }
  const std::vector<Triple>& valid() const { return valid_; }
  const std::vector<Triple>& test() const { return test_; }
  const TripleSet& all() const { return all_; }
  std::size_t triple_count() const { return all_.size(); }

  // True iff t is in train, valid or test. Out-of-range ids are a domain error.
  bool contains(const Triple& t) const;

  void check_ids(const Triple& t) const;

 private:
  Vocabulary concepts_;
  Vocabulary relations_;
  std::vector<Triple> train_;
  std::vector<Triple> valid_;
  std::vector<Triple> test_;
  TripleSet all_;
};

// Reads a UTF-8 triple file: one head<TAB>relation<TAB>tail record per line,
// '#'-prefixed lines and blank lines ignored. Labels are normalized
// (lowercase, internal whitespace -> '_'), duplicates collapse to the first
// occurrence and vocabularies are built in first-seen order. All triples land
// in the train pool; valid/test are empty. A file without any triple is a
// parse error unless allow_empty is set (split files may legitimately be
// empty).
KnowledgeGraph load_triples(const std::filesystem::path& path, bool allow_empty = false);

struct RelationSplitCounts {
  int rel = 0;
  int total = 0;
  int train = 0;
  int valid = 0;
  int test = 0;
};

struct SplitStats {
  std::vector<RelationSplitCounts> per_relation;
  std::vector<std::string> warnings;
};

// Per-relation split: each relation's triples are shuffled with the seeded
// generator and cut at floor(n*valid), floor(n*test); the remainder stays in
// train. Relations with fewer than 3 triples go entirely to train and emit a
// warning. Deterministic for a fixed seed.
KnowledgeGraph split_per_relation(const KnowledgeGraph& pool, const SplitRatios& ratios,
                                  std::uint64_t seed, SplitStats* stats = nullptr);

void save_triples(const std::filesystem::path& path, const KnowledgeGraph& g,
                  const std::vector<Triple>& triples);

// Checksum of a triple list under its graph's labels (order-sensitive).
std::uint64_t triples_checksum(const KnowledgeGraph& g, const std::vector<Triple>& triples);

}  // namespace cskge
