#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cskge/error.hpp"
#include "cskge/experiment.hpp"

using namespace cskge;

namespace {

struct Overrides {
  std::string config_path;
  long long seed = 0;
  bool seed_set = false;
  std::string model, setting, norm, score_mode;
};

void add_common(CLI::App* cmd, Overrides& ov) {
  cmd->add_option("--config", ov.config_path, "experiment config file")->required();
  cmd->add_option("--seed", ov.seed, "override the training seed")
      ->check(CLI::NonNegativeNumber)
      ->each([&ov](const std::string&) { ov.seed_set = true; });
  cmd->add_option("--model", ov.model,
                  "override the model (transe, transr, transe+txt, transe+aff, transe+ck, transe+all)");
  cmd->add_option("--setting", ov.setting, "override the setting (fixed, variable)")
      ->check(CLI::IsMember({"fixed", "variable"}));
  cmd->add_option("--norm", ov.norm, "override the norm (l1, l2)")
      ->check(CLI::IsMember({"l1", "l2"}));
  cmd->add_option("--score-mode", ov.score_mode, "override the score mode (total, knowledge)")
      ->check(CLI::IsMember({"total", "knowledge"}));
}

ExperimentConfig build_config(const Overrides& ov) {
  ExperimentConfig config = load_experiment_config(ov.config_path);
  if (ov.seed_set) config.train.seed = static_cast<std::uint64_t>(ov.seed);
  if (!ov.model.empty()) config.model = parse_model(ov.model);
  if (!ov.setting.empty()) config.train.setting = parse_setting(ov.setting);
  if (!ov.norm.empty()) config.train.norm = parse_norm(ov.norm);
  if (!ov.score_mode.empty()) config.train.score_mode = parse_score_mode(ov.score_mode);
  finalize_config(config);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"commonsense knowledge graph embedding toolkit"};
  app.require_subcommand(1);

  Overrides ov;
  std::string task = "concept";

  CLI::App* split = app.add_subcommand("split", "split a triple file into train/valid/test");
  CLI::App* prepare = app.add_subcommand("prepare", "build aligned semantic vector tables");
  CLI::App* train = app.add_subcommand("train", "train embeddings and write a checkpoint");
  CLI::App* eval = app.add_subcommand("eval", "evaluate a trained checkpoint");
  eval->add_option("--task", task, "concept, relation or classify")
      ->check(CLI::IsMember({"concept", "relation", "classify"}));
  CLI::App* retro = app.add_subcommand("retrofit", "retrofit a vector table to the graph");
  for (CLI::App* cmd : {split, prepare, train, eval, retro}) add_common(cmd, ov);

  CLI11_PARSE(app, argc, argv);

  try {
    ExperimentConfig config = build_config(ov);
    if (split->parsed()) {
      cmd_split(config, std::cout);
    } else if (prepare->parsed()) {
      cmd_prepare(config, std::cout);
    } else if (train->parsed()) {
      cmd_train(config, std::cout);
    } else if (eval->parsed()) {
      if (task == "classify")
        cmd_eval_classify(config, std::cout);
      else
        cmd_eval_link(config, task == "concept" ? PredictionTask::Concept : PredictionTask::Relation,
                      std::cout);
    } else if (retro->parsed()) {
      cmd_retrofit(config, std::cout);
    }
  } catch (const Error& e) {
    std::cerr << "error (" << category_name(e.category()) << "): " << e.what() << "\n";
    return category_exit_code(e.category());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
