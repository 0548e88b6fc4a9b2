#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include "cskge/knowledge_graph.hpp"
#include "cskge/training.hpp"

namespace cskge {

struct Checkpoint {
  std::uint64_t concept_hash = 0;
  std::uint64_t relation_hash = 0;
  std::map<std::string, std::string> config;
  TrainState state;
};

Checkpoint make_checkpoint(const KnowledgeGraph& graph, TrainState state,
                           std::map<std::string, std::string> config);

// Binary serialization, bit-exact round-trip for every matrix.
void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

// Raises an incompatibility error when the checkpoint's vocabulary hashes do
// not match the graph the caller wants to evaluate against.
void check_compatible(const Checkpoint& ckpt, const KnowledgeGraph& graph);

}  // namespace cskge
