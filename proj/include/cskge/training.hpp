#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cskge/energy.hpp"
#include "cskge/knowledge_graph.hpp"
#include "cskge/resources.hpp"
#include "cskge/sampling.hpp"
#include "cskge/types.hpp"

namespace cskge {

// Fixed freezes the prepared semantic vectors; Variable trains them too.
enum class Setting { Fixed, Variable };

const char* setting_name(Setting s);
Setting parse_setting(std::string_view name);

struct TrainConfig {
  Real learning_rate = 0.01;
  Real margin = 1.0;
  Index dim = 100;
  int batch_size = 5000;
  int epochs = 1000;
  Setting setting = Setting::Fixed;
  CorruptionWeights corruption;
  std::uint64_t seed = 1;
  Norm norm = Norm::L2;
  ClassSet classes;
  ScoreMode score_mode = ScoreMode::Total;
  int patience = 10;
  // Validation triples used for the per-epoch metric; 0 means all of them.
  std::size_t valid_sample = 0;
  bool use_transr = false;
  Index transr_dim = 0;  // 0 means dim

  void validate() const;
  EnergyConfig energy_config() const { return EnergyConfig{norm, classes, score_mode}; }
};

struct TrainPair {
  Triple positive;
  NegativeSample negative;
};

struct TrainState {
  EmbeddingSpace space;
  SemanticResourceSet resources;
  std::optional<TransRParams> transr;
};

struct EpochRecord {
  int epoch = 0;
  Real mean_loss = 0;
  Real valid_mean_rank = 0;
};

struct TrainResult {
  TrainState best;
  std::vector<EpochRecord> log;
  int best_epoch = 0;
  Real best_valid = 0;
};

// Concept rows drawn from [-6/sqrt(k), 6/sqrt(k)] then L2-normalized;
// relation rows drawn the same but left unnormalized. Semantic vectors are
// copied from the prepared resources (every active class must be present and
// aligned to k). TransR adds d-dimensional relation rows and identity
// projections. Deterministic per seed.
TrainState init_embeddings(const KnowledgeGraph& graph, const TrainConfig& config,
                           const SemanticResourceSet& resources);

inline Real margin_loss(Real pos_energy, Real neg_energy, Real margin) {
  return std::max<Real>(0, margin + pos_energy - neg_energy);
}

// One SGD step over the batch: accumulates the gradients of
// margin_loss(E(pos), E(neg)) for every pair with positive loss, applies them
// once, then re-normalizes every touched concept row (and touched semantic
// rows under Variable; under Fixed semantic vectors never change). Returns
// the summed batch loss. Non-finite gradients raise a numeric error.
Real sgd_step(TrainState& state, std::span<const TrainPair> batch, const TrainConfig& config);

using EpochCallback = std::function<void(const EpochRecord&)>;

// Epochs of shuffled mini-batches with one sampled negative per positive.
// After each epoch the filtered mean rank over a fixed validation subsample
// is recorded; the best-scoring state is kept and training stops early after
// `patience` non-improving epochs. Without validation triples the metric is
// NaN, no early stop happens and the final state is returned.
TrainResult train(const KnowledgeGraph& graph, const TrainConfig& config,
                  const SemanticResourceSet& resources, const EpochCallback& on_epoch = nullptr);

}  // namespace cskge
