#include "cskge/sampling.hpp"

#include "cskge/error.hpp"

namespace cskge {

namespace {

constexpr int kUniformRetries = 64;

Triple with_slot(const Triple& t, Slot slot, int id) {
  Triple out = t;
  switch (slot) {
    case Slot::Head: out.head = id; break;
    case Slot::Tail: out.tail = id; break;
    case Slot::Relation: out.rel = id; break;
  }
  return out;
}

int slot_id(const Triple& t, Slot slot) {
  switch (slot) {
    case Slot::Head: return t.head;
    case Slot::Tail: return t.tail;
    case Slot::Relation: return t.rel;
  }
  return -1;
}

}  // namespace

std::optional<Triple> corrupt_at(const Triple& t, const KnowledgeGraph& graph, Slot slot,
                                 Rng& rng) {
  graph.check_ids(t);
  const int n = slot == Slot::Relation ? graph.relations().size() : graph.concepts().size();
  const int original = slot_id(t, slot);

  for (int attempt = 0; attempt < kUniformRetries; ++attempt) {
    int c = static_cast<int>(rng.index(static_cast<std::uint64_t>(n)));
    if (c == original) continue;
    Triple candidate = with_slot(t, slot, c);
    if (!graph.contains(candidate)) return candidate;
  }

  std::vector<int> valid;
  for (int c = 0; c < n; ++c) {
    if (c == original) continue;
    if (!graph.contains(with_slot(t, slot, c))) valid.push_back(c);
  }
  if (valid.empty()) return std::nullopt;
  return with_slot(t, slot, valid[rng.index(valid.size())]);
}

NegativeSample sample_negative(const Triple& t, const KnowledgeGraph& graph,
                               const CorruptionWeights& weights, Rng& rng) {
  const Real u = rng.uniform01();
  Slot first = u < weights.head            ? Slot::Head
               : u < weights.head + weights.tail ? Slot::Tail
                                            : Slot::Relation;
  constexpr Slot cycle[] = {Slot::Head, Slot::Tail, Slot::Relation};
  int start = static_cast<int>(first);
  for (int k = 0; k < 3; ++k) {
    Slot slot = cycle[(start + k) % 3];
    if (auto corrupted = corrupt_at(t, graph, slot, rng))
      return NegativeSample{t, *corrupted, slot};
  }
  throw_error(ErrorCategory::Domain,
              "negative sampling exhausted: every corruption of (" + std::to_string(t.head) + "," +
                  std::to_string(t.rel) + "," + std::to_string(t.tail) + ") is a known triple");
}

}  // namespace cskge
