#include "cskge/training.hpp"

#include <cmath>

#include "cskge/error.hpp"
#include "cskge/evaluation.hpp"
#include "cskge/rng.hpp"

namespace cskge {

namespace {

constexpr std::uint64_t kLoopSalt = 0x6c6f6f70;   // epoch shuffling + negatives
constexpr std::uint64_t kValidSalt = 0x76616c64;  // validation subsample

}  // namespace

const char* setting_name(Setting s) { return s == Setting::Fixed ? "fixed" : "variable"; }

Setting parse_setting(std::string_view name) {
  if (name == "fixed") return Setting::Fixed;
  if (name == "variable") return Setting::Variable;
  throw_error(ErrorCategory::Config, "unknown setting: " + std::string(name));
}

void TrainConfig::validate() const {
  if (learning_rate <= 0) throw_error(ErrorCategory::Config, "learning_rate must be positive");
  if (margin <= 0) throw_error(ErrorCategory::Config, "margin must be positive");
  if (dim <= 0) throw_error(ErrorCategory::Config, "dim must be positive");
  if (batch_size < 1) throw_error(ErrorCategory::Config, "batch_size must be at least 1");
  if (epochs < 1) throw_error(ErrorCategory::Config, "epochs must be at least 1");
  if (patience < 1) throw_error(ErrorCategory::Config, "patience must be at least 1");
  if (corruption.head < 0 || corruption.tail < 0 || corruption.rel < 0)
    throw_error(ErrorCategory::Config, "corruption weights must be non-negative");
  if (std::abs(corruption.head + corruption.tail + corruption.rel - 1.0) > 1e-9)
    throw_error(ErrorCategory::Config, "corruption weights must sum to 1");
  if (transr_dim < 0) throw_error(ErrorCategory::Config, "transr_dim must be non-negative");
  if (use_transr && !classes.empty())
    throw_error(ErrorCategory::Config, "transr does not combine with semantic classes");
}

TrainState init_embeddings(const KnowledgeGraph& graph, const TrainConfig& config,
                           const SemanticResourceSet& resources) {
  config.validate();
  for (SemanticClass cls : kAllClasses)
    if (config.classes.contains(cls) && !resources.has(cls))
      throw_error(ErrorCategory::Config,
                  std::string("active class '") + class_tag(cls) + "' has no prepared resource");
  if (!config.classes.empty()) {
    if (resources.dim() != config.dim)
      throw_error(ErrorCategory::Config,
                  "semantic resources have dimension " + std::to_string(resources.dim()) +
                      " but embeddings use " + std::to_string(config.dim));
    if (resources.concept_count() != graph.concepts().size())
      throw_error(ErrorCategory::Config, "semantic resources cover a different concept count");
  }

  Rng rng(config.seed);
  const Index k = config.dim;
  const Real bound = 6.0 / std::sqrt(static_cast<Real>(k));

  TrainState state;
  state.space.concepts.resize(graph.concepts().size(), k);
  for (Index i = 0; i < state.space.concepts.rows(); ++i) {
    auto row = state.space.concepts.row(i);
    for (Index j = 0; j < k; ++j) row[j] = rng.uniform(-bound, bound);
    Real n = row.norm();
    if (n == 0)
      row[0] = 1;
    else
      row /= n;
  }
  state.space.relations.resize(graph.relations().size(), k);
  for (Index i = 0; i < state.space.relations.rows(); ++i)
    for (Index j = 0; j < k; ++j) state.space.relations(i, j) = rng.uniform(-bound, bound);

  state.resources = resources;

  if (config.use_transr) {
    const Index d = config.transr_dim > 0 ? config.transr_dim : k;
    const Real dbound = 6.0 / std::sqrt(static_cast<Real>(d));
    TransRParams params;
    params.relations.resize(graph.relations().size(), d);
    for (Index i = 0; i < params.relations.rows(); ++i)
      for (Index j = 0; j < d; ++j) params.relations(i, j) = rng.uniform(-dbound, dbound);
    params.projections.assign(static_cast<std::size_t>(graph.relations().size()),
                              Matrix::Identity(k, d));
    state.transr = std::move(params);
  }
  return state;
}

namespace {

void apply_rows(Matrix& target, const GradientTable& grads, Real lr, bool renormalize,
                const char* what) {
  for (const auto& [row, g] : grads.rows) {
    if (!g.allFinite())
      throw_error(ErrorCategory::Numeric,
                  std::string("non-finite gradient for ") + what + " row " + std::to_string(row));
    target.row(row) -= lr * g;
    if (renormalize) {
      Real n = target.row(row).norm();
      if (n > 0) target.row(row) /= n;
    }
  }
}

Real transr_step(TrainState& state, std::span<const TrainPair> batch, const TrainConfig& config) {
  TransRParams& params = *state.transr;
  TransRGradients grads;
  Real loss_sum = 0;
  for (const TrainPair& pair : batch) {
    Real pos = transr_energy(state.space, params, pair.positive, config.norm);
    Real neg = transr_energy(state.space, params, pair.negative.corrupted, config.norm);
    if (!std::isfinite(pos) || !std::isfinite(neg))
      throw_error(ErrorCategory::Numeric, "non-finite energy in batch");
    Real loss = margin_loss(pos, neg, config.margin);
    if (loss <= 0) continue;
    loss_sum += loss;
    add_transr_energy_gradient(state.space, params, pair.positive, config.norm, 1.0, grads);
    add_transr_energy_gradient(state.space, params, pair.negative.corrupted, config.norm, -1.0,
                               grads);
  }

  const Real lr = config.learning_rate;
  apply_rows(state.space.concepts, grads.entities, lr, true, "concept");
  apply_rows(params.relations, grads.relations, lr, false, "relation");
  for (const auto& [rel, g] : grads.projections) {
    if (!g.allFinite())
      throw_error(ErrorCategory::Numeric,
                  "non-finite gradient for projection " + std::to_string(rel));
    params.projections[static_cast<std::size_t>(rel)] -= lr * g;
  }
  return loss_sum;
}

}  // namespace

Real sgd_step(TrainState& state, std::span<const TrainPair> batch, const TrainConfig& config) {
  if (batch.empty()) throw_error(ErrorCategory::Domain, "sgd_step needs a non-empty batch");
  if (state.transr) return transr_step(state, batch, config);

  const EnergyConfig ecfg = config.energy_config();
  EnergyGradients grads;
  Real loss_sum = 0;
  for (const TrainPair& pair : batch) {
    Real pos = total_energy(state.space, state.resources, pair.positive, ecfg);
    Real neg = total_energy(state.space, state.resources, pair.negative.corrupted, ecfg);
    if (!std::isfinite(pos) || !std::isfinite(neg))
      throw_error(ErrorCategory::Numeric, "non-finite energy in batch");
    Real loss = margin_loss(pos, neg, config.margin);
    if (loss <= 0) continue;
    loss_sum += loss;
    add_total_energy_gradient(state.space, state.resources, pair.positive, ecfg, 1.0, grads);
    add_total_energy_gradient(state.space, state.resources, pair.negative.corrupted, ecfg, -1.0,
                              grads);
  }

  const Real lr = config.learning_rate;
  apply_rows(state.space.concepts, grads.concepts, lr, true, "concept");
  apply_rows(state.space.relations, grads.relations, lr, false, "relation");
  if (config.setting == Setting::Variable) {
    for (SemanticClass cls : kAllClasses) {
      if (!config.classes.contains(cls)) continue;
      apply_rows(state.resources.mutable_vectors(cls), grads.semantic[static_cast<std::size_t>(cls)],
                 lr, true, class_tag(cls));
    }
  }
  return loss_sum;
}

TrainResult train(const KnowledgeGraph& graph, const TrainConfig& config,
                  const SemanticResourceSet& resources, const EpochCallback& on_epoch) {
  config.validate();
  if (graph.train().empty()) throw_error(ErrorCategory::Domain, "training split is empty");

  TrainState state = init_embeddings(graph, config, resources);

  std::vector<Triple> valid_sample = graph.valid();
  if (config.valid_sample > 0 && config.valid_sample < valid_sample.size()) {
    Rng vrng(config.seed ^ kValidSalt);
    vrng.shuffle(valid_sample);
    valid_sample.resize(config.valid_sample);
  }

  const EnergyConfig ecfg = config.energy_config();
  TripleScorer scorer = state.transr
                            ? make_transr_scorer(state.space, *state.transr, config.norm)
                            : make_scorer(state.space, state.resources, ecfg);

  TrainResult result;
  result.best_valid = std::numeric_limits<Real>::quiet_NaN();
  int bad_epochs = 0;

  Rng rng(config.seed ^ kLoopSalt);
  std::vector<Triple> order = graph.train();
  std::vector<TrainPair> batch;
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    rng.shuffle(order);
    Real loss_sum = 0;
    for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(config.batch_size)) {
      const std::size_t stop = std::min(order.size(), start + static_cast<std::size_t>(config.batch_size));
      batch.clear();
      for (std::size_t i = start; i < stop; ++i)
        batch.push_back(TrainPair{order[i], sample_negative(order[i], graph, config.corruption, rng)});
      loss_sum += sgd_step(state, batch, config);
    }

    EpochRecord record;
    record.epoch = epoch;
    record.mean_loss = loss_sum / static_cast<Real>(order.size());
    record.valid_mean_rank =
        valid_sample.empty()
            ? std::numeric_limits<Real>::quiet_NaN()
            : eval_link_prediction(valid_sample, graph, scorer, PredictionTask::Concept)
                  .mean_rank_filtered;
    result.log.push_back(record);
    if (on_epoch) on_epoch(record);

    if (!valid_sample.empty()) {
      if (std::isnan(result.best_valid) || record.valid_mean_rank < result.best_valid) {
        result.best_valid = record.valid_mean_rank;
        result.best_epoch = epoch;
        result.best = state;
        bad_epochs = 0;
      } else if (++bad_epochs >= config.patience) {
        break;
      }
    }
  }

  if (valid_sample.empty()) {
    result.best = std::move(state);
    result.best_epoch = result.log.empty() ? 0 : result.log.back().epoch;
  }
  return result;
}

}  // namespace cskge
