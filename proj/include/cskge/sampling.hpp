#pragma once

#include <optional>

#include "cskge/knowledge_graph.hpp"
#include "cskge/rng.hpp"
#include "cskge/types.hpp"

namespace cskge {

// Probability of corrupting each position; must sum to 1.
struct CorruptionWeights {
  Real head = 0.45;
  Real tail = 0.45;
  Real rel = 0.10;
};

struct NegativeSample {
  Triple original;
  Triple corrupted;
  Slot position;
};

// Replaces the given slot with a uniformly drawn id such that the result
// differs from `t` and is not a known triple. Falls back to an exhaustive
// candidate scan after a bounded number of rejected draws; nullopt when the
// slot has no valid candidate at all.
std::optional<Triple> corrupt_at(const Triple& t, const KnowledgeGraph& graph, Slot slot, Rng& rng);

// Draws the corruption position from `weights`, then corrupts it; positions
// are cycled when one is exhausted. A triple whose every corruption is a
// known triple is a domain error.
NegativeSample sample_negative(const Triple& t, const KnowledgeGraph& graph,
                               const CorruptionWeights& weights, Rng& rng);

}  // namespace cskge
