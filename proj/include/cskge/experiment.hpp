#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "cskge/align.hpp"
#include "cskge/checkpoint.hpp"
#include "cskge/evaluation.hpp"
#include "cskge/knowledge_graph.hpp"
#include "cskge/resources.hpp"
#include "cskge/retrofit.hpp"
#include "cskge/training.hpp"

namespace cskge {

enum class ModelKind { TransE, TransR, TransE_TXT, TransE_AFF, TransE_CK, TransE_ALL };

const char* model_name(ModelKind m);
ModelKind parse_model(std::string_view name);

// Which semantic classes a model trains with; TransE and TransR use none.
ClassSet model_classes(ModelKind m);

// Flat key = value configuration for a whole experiment run. The model
// choice alone decides the active semantic classes and whether relation
// projections are trained; those are not separately configurable.
struct ExperimentConfig {
  std::filesystem::path triples;
  std::filesystem::path txt_vectors;
  std::filesystem::path aff_vectors;
  std::filesystem::path ck_vectors;
  std::filesystem::path ck_instances;
  std::filesystem::path output_dir = "run";

  ModelKind model = ModelKind::TransE;
  TrainConfig train;

  SplitRatios ratios;
  std::uint64_t split_seed = 1;
  // Drop concepts not covered by every active class before splitting.
  bool restrict_coverage = false;

  AlignMethod align_method = AlignMethod::RandomProjection;

  std::filesystem::path retrofit_input;
  std::filesystem::path retrofit_output;
  Real retrofit_alpha = 1.0;
  Real retrofit_beta = 1.0;
  int retrofit_iterations = 10;

  std::filesystem::path splits_dir() const { return output_dir / "splits"; }
  std::filesystem::path resources_dir() const { return output_dir / "resources"; }
  std::filesystem::path checkpoints_dir() const { return output_dir / "checkpoints"; }
  std::filesystem::path reports_dir() const { return output_dir / "reports"; }
  std::filesystem::path checkpoint_path() const;
  std::filesystem::path train_log_path() const;

  // Rejects missing inputs and model/resource mismatches before any work.
  void validate_for_training() const;
};

// Applies one key = value pair; unknown keys are a configuration error.
void set_config_key(ExperimentConfig& config, std::string_view key, std::string_view value);

// Parses a flat key = value file ('#' comments, blank lines ignored) and
// derives the model-dependent fields.
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

// Re-derives active classes and projection use from the model choice; call
// after any override that may change the model.
void finalize_config(ExperimentConfig& config);

struct SplitOutcome {
  SplitStats stats;
  std::size_t total = 0;
};

SplitOutcome cmd_split(const ExperimentConfig& config, std::ostream& out);
void cmd_prepare(const ExperimentConfig& config, std::ostream& out);
TrainResult cmd_train(const ExperimentConfig& config, std::ostream& out);
LinkPredictionReport cmd_eval_link(const ExperimentConfig& config, PredictionTask task,
                                   std::ostream& out);
ClassificationReport cmd_eval_classify(const ExperimentConfig& config, std::ostream& out);
RetrofitResult cmd_retrofit(const ExperimentConfig& config, std::ostream& out);

}  // namespace cskge
