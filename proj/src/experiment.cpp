#include "cskge/experiment.hpp"

#include <array>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

#include "cskge/error.hpp"
#include "cskge/util.hpp"

namespace cskge {

namespace {

constexpr std::uint64_t kClassifyValidSalt = 0x66697476;  // negatives for threshold fitting
constexpr std::uint64_t kClassifyTestSalt = 0x66697474;   // negatives for the test report

Real parse_real_or(std::string_view key, std::string_view value) {
  auto v = parse_real(value);
  if (!v) throw_error(ErrorCategory::Config, std::string(key) + ": not a number: " + std::string(value));
  return *v;
}

long long parse_int_or(std::string_view key, std::string_view value) {
  auto v = parse_int(value);
  if (!v) throw_error(ErrorCategory::Config, std::string(key) + ": not an integer: " + std::string(value));
  return *v;
}

std::uint64_t parse_seed_or(std::string_view key, std::string_view value) {
  long long v = parse_int_or(key, value);
  if (v < 0) throw_error(ErrorCategory::Config, std::string(key) + ": must be non-negative");
  return static_cast<std::uint64_t>(v);
}

bool parse_bool_or(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw_error(ErrorCategory::Config, std::string(key) + ": expected true or false, got " + std::string(value));
}

void check_ratios(const SplitRatios& r) {
  if (!(r.train > 0) || !(r.valid > 0) || !(r.test > 0) ||
      std::abs(r.train + r.valid + r.test - 1.0) > 1e-9)
    throw_error(ErrorCategory::Config, "split ratios must be positive and sum to 1");
}

std::string line(const char* fmt, ...) __attribute__((format(printf, 1, 2)));
std::string line(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  return std::string(buf);
}

// Loads the three split files written by cmd_split under one shared
// vocabulary, ids assigned in train, valid, test file order.
KnowledgeGraph load_splits(const std::filesystem::path& dir) {
  Vocabulary concepts, relations;
  std::array<std::vector<Triple>, 3> parts;
  const std::array<const char*, 3> names = {"train.tsv", "valid.tsv", "test.tsv"};
  for (std::size_t i = 0; i < names.size(); ++i) {
    KnowledgeGraph piece = load_triples(dir / names[i], /*allow_empty=*/i > 0);
    parts[i].reserve(piece.train().size());
    for (const Triple& t : piece.train()) {
      Triple mapped;
      mapped.head = concepts.add(piece.concepts().label(t.head));
      mapped.rel = relations.add(piece.relations().label(t.rel));
      mapped.tail = concepts.add(piece.concepts().label(t.tail));
      parts[i].push_back(mapped);
    }
  }
  return KnowledgeGraph::make(std::move(concepts), std::move(relations), std::move(parts[0]),
                              std::move(parts[1]), std::move(parts[2]));
}

const std::filesystem::path& class_source(const ExperimentConfig& config, SemanticClass c) {
  switch (c) {
    case SemanticClass::Text: return config.txt_vectors;
    case SemanticClass::Affect: return config.aff_vectors;
    case SemanticClass::CommonKnowledge: return config.ck_vectors;
  }
  throw_error(ErrorCategory::Domain, "bad semantic class");
}

// Builds the label-keyed source-dimension table for one class, restricted to
// the graph's concepts.
VectorTable build_class_table(const ExperimentConfig& config, SemanticClass c,
                              const KnowledgeGraph& graph) {
  VectorTable out;
  switch (c) {
    case SemanticClass::Text: {
      VectorTable words = load_vector_file(config.txt_vectors);
      out = VectorTable(words.dim());
      for (int i = 0; i < graph.concepts().size(); ++i) {
        const std::string& label = graph.concepts().label(i);
        if (auto v = phrase_vector(label, words)) out.insert(label, *v);
      }
      break;
    }
    case SemanticClass::Affect: {
      VectorTable src = load_vector_file(config.aff_vectors);
      out = VectorTable(src.dim());
      for (int i = 0; i < graph.concepts().size(); ++i) {
        const std::string& label = graph.concepts().label(i);
        if (auto row = src.find(label)) out.insert(label, src.row(*row));
      }
      break;
    }
    case SemanticClass::CommonKnowledge: {
      VectorTable words = load_vector_file(config.ck_vectors);
      std::vector<InstanceList> lists = load_instance_lists(config.ck_instances);
      VectorTable built = build_common_knowledge(lists, words);
      out = VectorTable(built.dim() > 0 ? built.dim() : words.dim());
      for (int i = 0; i < graph.concepts().size(); ++i) {
        const std::string& label = graph.concepts().label(i);
        if (auto row = built.find(label)) out.insert(label, built.row(*row));
      }
      break;
    }
  }
  if (out.empty())
    throw_error(ErrorCategory::Coverage,
                std::string("class ") + class_tag(c) + " covers no graph concept");
  return out;
}

std::filesystem::path prepared_path(const ExperimentConfig& config, SemanticClass c) {
  return config.resources_dir() / (std::string(class_tag(c)) + ".vec");
}

// Binds the prepared per-class files to the graph.
SemanticResourceSet load_resources(const ExperimentConfig& config, const KnowledgeGraph& graph) {
  ClassSet classes = model_classes(config.model);
  if (classes.empty()) return {};
  std::array<VectorTable, kNumClasses> tables;
  std::array<const VectorTable*, kNumClasses> ptrs{nullptr, nullptr, nullptr};
  for (SemanticClass c : kAllClasses) {
    if (!classes.contains(c)) continue;
    auto& slot = tables[static_cast<std::size_t>(c)];
    slot = load_vector_file(prepared_path(config, c));
    ptrs[static_cast<std::size_t>(c)] = &slot;
  }
  return SemanticResourceSet::bind(graph, ptrs);
}

std::map<std::string, std::string> config_echo(const ExperimentConfig& config) {
  const TrainConfig& t = config.train;
  std::map<std::string, std::string> kv;
  kv["model"] = model_name(config.model);
  kv["setting"] = setting_name(t.setting);
  kv["norm"] = norm_name(t.norm);
  kv["score_mode"] = score_mode_name(t.score_mode);
  kv["learning_rate"] = format_real(t.learning_rate);
  kv["margin"] = format_real(t.margin);
  kv["dim"] = std::to_string(t.dim);
  kv["batch_size"] = std::to_string(t.batch_size);
  kv["epochs"] = std::to_string(t.epochs);
  kv["patience"] = std::to_string(t.patience);
  kv["seed"] = std::to_string(t.seed);
  kv["valid_sample"] = std::to_string(t.valid_sample);
  kv["corrupt_head"] = format_real(t.corruption.head);
  kv["corrupt_tail"] = format_real(t.corruption.tail);
  kv["corrupt_rel"] = format_real(t.corruption.rel);
  if (t.use_transr) kv["transr_dim"] = std::to_string(t.transr_dim > 0 ? t.transr_dim : t.dim);
  return kv;
}

// Scorer over the checkpoint state under the current evaluation config.
// Returned lambdas capture the checkpoint by reference; keep it alive.
TripleScorer checkpoint_scorer(const Checkpoint& ckpt, const ExperimentConfig& config) {
  if (ckpt.state.transr) return make_transr_scorer(ckpt.state.space, *ckpt.state.transr, config.train.norm);
  ClassSet classes = model_classes(config.model);
  for (SemanticClass c : kAllClasses) {
    if (classes.contains(c) && !ckpt.state.resources.has(c))
      throw_error(ErrorCategory::Incompatible,
                  std::string("checkpoint lacks semantic class ") + class_tag(c));
  }
  return make_scorer(ckpt.state.space, ckpt.state.resources,
                     EnergyConfig{config.train.norm, classes, config.train.score_mode});
}

void write_text_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw_error(ErrorCategory::Io, "cannot write " + path.string());
  out << body;
  out.flush();
  if (!out) throw_error(ErrorCategory::Io, "write failed for " + path.string());
}

}  // namespace

const char* model_name(ModelKind m) {
  switch (m) {
    case ModelKind::TransE: return "transe";
    case ModelKind::TransR: return "transr";
    case ModelKind::TransE_TXT: return "transe+txt";
    case ModelKind::TransE_AFF: return "transe+aff";
    case ModelKind::TransE_CK: return "transe+ck";
    case ModelKind::TransE_ALL: return "transe+all";
  }
  return "?";
}

ModelKind parse_model(std::string_view name) {
  for (ModelKind m : {ModelKind::TransE, ModelKind::TransR, ModelKind::TransE_TXT,
                      ModelKind::TransE_AFF, ModelKind::TransE_CK, ModelKind::TransE_ALL})
    if (name == model_name(m)) return m;
  throw_error(ErrorCategory::Config, "unknown model: " + std::string(name));
}

ClassSet model_classes(ModelKind m) {
  switch (m) {
    case ModelKind::TransE:
    case ModelKind::TransR: return {};
    case ModelKind::TransE_TXT: return {SemanticClass::Text};
    case ModelKind::TransE_AFF: return {SemanticClass::Affect};
    case ModelKind::TransE_CK: return {SemanticClass::CommonKnowledge};
    case ModelKind::TransE_ALL: return ClassSet::all();
  }
  return {};
}

std::filesystem::path ExperimentConfig::checkpoint_path() const {
  return checkpoints_dir() / (std::string(model_name(model)) + ".ckpt");
}

std::filesystem::path ExperimentConfig::train_log_path() const {
  return checkpoints_dir() / (std::string(model_name(model)) + ".log");
}

void ExperimentConfig::validate_for_training() const {
  train.validate();
  check_ratios(ratios);
}

void set_config_key(ExperimentConfig& config, std::string_view key, std::string_view value) {
  std::string v(value);
  if (key == "triples") config.triples = v;
  else if (key == "txt_vectors") config.txt_vectors = v;
  else if (key == "aff_vectors") config.aff_vectors = v;
  else if (key == "ck_vectors") config.ck_vectors = v;
  else if (key == "ck_instances") config.ck_instances = v;
  else if (key == "output_dir") config.output_dir = v;
  else if (key == "model") config.model = parse_model(value);
  else if (key == "setting") config.train.setting = parse_setting(value);
  else if (key == "norm") config.train.norm = parse_norm(value);
  else if (key == "score_mode") config.train.score_mode = parse_score_mode(value);
  else if (key == "learning_rate") config.train.learning_rate = parse_real_or(key, value);
  else if (key == "margin") config.train.margin = parse_real_or(key, value);
  else if (key == "dim") config.train.dim = static_cast<Index>(parse_int_or(key, value));
  else if (key == "batch_size") config.train.batch_size = static_cast<int>(parse_int_or(key, value));
  else if (key == "epochs") config.train.epochs = static_cast<int>(parse_int_or(key, value));
  else if (key == "patience") config.train.patience = static_cast<int>(parse_int_or(key, value));
  else if (key == "seed") config.train.seed = parse_seed_or(key, value);
  else if (key == "valid_sample") config.train.valid_sample = static_cast<std::size_t>(parse_seed_or(key, value));
  else if (key == "transr_dim") config.train.transr_dim = static_cast<Index>(parse_int_or(key, value));
  else if (key == "corrupt_head") config.train.corruption.head = parse_real_or(key, value);
  else if (key == "corrupt_tail") config.train.corruption.tail = parse_real_or(key, value);
  else if (key == "corrupt_rel") config.train.corruption.rel = parse_real_or(key, value);
  else if (key == "train_ratio") config.ratios.train = parse_real_or(key, value);
  else if (key == "valid_ratio") config.ratios.valid = parse_real_or(key, value);
  else if (key == "test_ratio") config.ratios.test = parse_real_or(key, value);
  else if (key == "split_seed") config.split_seed = parse_seed_or(key, value);
  else if (key == "restrict") config.restrict_coverage = parse_bool_or(key, value);
  else if (key == "align_method") config.align_method = parse_align_method(value);
  else if (key == "retrofit_input") config.retrofit_input = v;
  else if (key == "retrofit_output") config.retrofit_output = v;
  else if (key == "retrofit_alpha") config.retrofit_alpha = parse_real_or(key, value);
  else if (key == "retrofit_beta") config.retrofit_beta = parse_real_or(key, value);
  else if (key == "retrofit_iterations") config.retrofit_iterations = static_cast<int>(parse_int_or(key, value));
  else throw_error(ErrorCategory::Config, "unknown config key: " + std::string(key));
}

void finalize_config(ExperimentConfig& config) {
  config.train.classes = model_classes(config.model);
  config.train.use_transr = config.model == ModelKind::TransR;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw_error(ErrorCategory::Io, "cannot read " + path.string());

  ExperimentConfig config;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view text = trim(raw);
    if (text.empty() || text.front() == '#') continue;
    auto eq = text.find('=');
    if (eq == std::string_view::npos)
      throw_parse(path.string(), lineno, "expected key = value");
    std::string_view key = trim(text.substr(0, eq));
    std::string_view value = trim(text.substr(eq + 1));
    if (key.empty()) throw_parse(path.string(), lineno, "empty key");
    try {
      set_config_key(config, key, value);
    } catch (const Error& e) {
      throw_error(e.category(), path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  finalize_config(config);
  return config;
}

SplitOutcome cmd_split(const ExperimentConfig& config, std::ostream& out) {
  check_ratios(config.ratios);
  if (config.triples.empty()) throw_error(ErrorCategory::Config, "triples path not set");

  KnowledgeGraph pool = load_triples(config.triples);
  out << "loaded " << pool.triple_count() << " triples, " << pool.concepts().size()
      << " concepts, " << pool.relations().size() << " relations\n";

  if (config.restrict_coverage && !model_classes(config.model).empty()) {
    SemanticResourceSet resources = load_resources(config, pool);
    RestrictResult kept = restrict_to_covered(pool, resources);
    out << "coverage restriction kept " << kept.graph.concepts().size() << "/"
        << pool.concepts().size() << " concepts, " << kept.graph.triple_count() << "/"
        << pool.triple_count() << " triples\n";
    pool = std::move(kept.graph);
  }

  SplitStats stats;
  KnowledgeGraph split = split_per_relation(pool, config.ratios, config.split_seed, &stats);

  std::filesystem::create_directories(config.splits_dir());
  save_triples(config.splits_dir() / "train.tsv", split, split.train());
  save_triples(config.splits_dir() / "valid.tsv", split, split.valid());
  save_triples(config.splits_dir() / "test.tsv", split, split.test());

  std::ostringstream manifest;
  manifest << "seed = " << config.split_seed << "\n";
  manifest << "ratios = " << format_real(config.ratios.train) << " "
           << format_real(config.ratios.valid) << " " << format_real(config.ratios.test) << "\n";
  manifest << "concepts = " << split.concepts().size() << "\n";
  manifest << "relations = " << split.relations().size() << "\n";
  manifest << "total = " << split.triple_count() << "\n";
  manifest << "train = " << split.train().size() << " checksum = "
           << hex64(triples_checksum(split, split.train())) << "\n";
  manifest << "valid = " << split.valid().size() << " checksum = "
           << hex64(triples_checksum(split, split.valid())) << "\n";
  manifest << "test = " << split.test().size() << " checksum = "
           << hex64(triples_checksum(split, split.test())) << "\n";
  for (const RelationSplitCounts& rc : stats.per_relation)
    manifest << "relation " << split.relations().label(rc.rel) << ": total=" << rc.total
             << " train=" << rc.train << " valid=" << rc.valid << " test=" << rc.test << "\n";
  for (const std::string& w : stats.warnings) manifest << "warning: " << w << "\n";
  write_text_file(config.splits_dir() / "manifest.txt", manifest.str());

  out << "split " << split.triple_count() << " -> " << split.train().size() << "/"
      << split.valid().size() << "/" << split.test().size() << " (train/valid/test)\n";
  for (const std::string& w : stats.warnings) out << "warning: " << w << "\n";

  return SplitOutcome{std::move(stats), split.triple_count()};
}

void cmd_prepare(const ExperimentConfig& config, std::ostream& out) {
  ClassSet classes = model_classes(config.model);
  if (classes.empty()) {
    out << "model " << model_name(config.model) << " uses no semantic class; nothing to prepare\n";
    return;
  }
  if (config.triples.empty()) throw_error(ErrorCategory::Config, "triples path not set");
  for (SemanticClass c : kAllClasses) {
    if (!classes.contains(c)) continue;
    if (class_source(config, c).empty())
      throw_error(ErrorCategory::Config,
                  std::string("model needs class ") + class_tag(c) + " but its vector path is not set");
    if (c == SemanticClass::CommonKnowledge && config.ck_instances.empty())
      throw_error(ErrorCategory::Config, "common-knowledge class needs ck_instances");
  }

  KnowledgeGraph graph = load_triples(config.triples);
  std::filesystem::create_directories(config.resources_dir());

  for (SemanticClass c : kAllClasses) {
    if (!classes.contains(c)) continue;
    VectorTable table = build_class_table(config, c, graph);
    int covered = table.size();
    std::uint64_t align_seed = config.train.seed ^ fnv1a(class_tag(c));
    VectorTable aligned = align_dimension(table, config.train.dim, config.align_method, align_seed);
    save_vector_file(prepared_path(config, c), aligned);
    out << class_tag(c) << ": covered " << covered << "/" << graph.concepts().size()
        << " concepts, dim " << table.dim() << " -> " << aligned.dim() << "\n";
  }
}

TrainResult cmd_train(const ExperimentConfig& config, std::ostream& out) {
  config.validate_for_training();

  KnowledgeGraph graph = load_splits(config.splits_dir());
  SemanticResourceSet resources = load_resources(config, graph);

  std::filesystem::create_directories(config.checkpoints_dir());
  std::ofstream log(config.train_log_path());
  if (!log) throw_error(ErrorCategory::Io, "cannot write " + config.train_log_path().string());

  std::map<std::string, std::string> echo = config_echo(config);
  for (const auto& [key, value] : echo) log << "# " << key << " = " << value << "\n";

  TrainResult result = train(graph, config.train, resources, [&log](const EpochRecord& r) {
    log << "epoch=" << r.epoch << " mean_loss=" << format_real(r.mean_loss)
        << " valid_mean_rank_filtered=" << format_real(r.valid_mean_rank) << "\n";
  });
  log << "# best_epoch = " << result.best_epoch << "\n";
  log << "# best_valid_mean_rank = " << format_real(result.best_valid) << "\n";
  log.flush();
  if (!log) throw_error(ErrorCategory::Io, "write failed for " + config.train_log_path().string());

  echo["best_epoch"] = std::to_string(result.best_epoch);
  echo["best_valid_mean_rank"] = format_real(result.best_valid);
  Checkpoint ckpt = make_checkpoint(graph, result.best, std::move(echo));
  save_checkpoint(ckpt, config.checkpoint_path());

  out << "trained " << model_name(config.model) << " (" << setting_name(config.train.setting)
      << ") for " << result.log.size() << " epochs; best epoch " << result.best_epoch
      << ", valid mean rank " << format_real(result.best_valid) << "\n";
  out << "checkpoint: " << config.checkpoint_path().string() << "\n";
  return result;
}

LinkPredictionReport cmd_eval_link(const ExperimentConfig& config, PredictionTask task,
                                   std::ostream& out) {
  KnowledgeGraph graph = load_splits(config.splits_dir());
  Checkpoint ckpt = load_checkpoint(config.checkpoint_path());
  check_compatible(ckpt, graph);
  TripleScorer scorer = checkpoint_scorer(ckpt, config);

  LinkPredictionReport report = eval_link_prediction(graph.test(), graph, scorer, task);

  std::ostringstream body;
  body << "task = " << task_name(task) << "\n";
  body << "model = " << model_name(config.model) << "\n";
  body << "setting = " << setting_name(config.train.setting) << "\n";
  body << "norm = " << norm_name(config.train.norm) << "\n";
  body << "score_mode = " << score_mode_name(config.train.score_mode) << "\n";
  body << "n_test = " << report.n_test << "\n";
  body << "n_rankings = " << report.n_rankings << "\n";
  body << "\n";
  body << line("%-12s  %10s  %10s  %10s  %10s\n", "model", "mr_raw", "mr_filt", "h10_raw",
               "h10_filt");
  body << line("%-12s  %10.2f  %10.2f  %10.2f  %10.2f\n", model_name(config.model),
               report.mean_rank_raw, report.mean_rank_filtered, report.hits10_raw,
               report.hits10_filtered);

  std::filesystem::create_directories(config.reports_dir());
  std::filesystem::path path =
      config.reports_dir() / (std::string(task_name(task)) + "_" + model_name(config.model) + ".txt");
  write_text_file(path, body.str());

  out << body.str();
  out << "report: " << path.string() << "\n";
  return report;
}

ClassificationReport cmd_eval_classify(const ExperimentConfig& config, std::ostream& out) {
  KnowledgeGraph graph = load_splits(config.splits_dir());
  Checkpoint ckpt = load_checkpoint(config.checkpoint_path());
  check_compatible(ckpt, graph);
  TripleScorer scorer = checkpoint_scorer(ckpt, config);

  // Thresholds come from the validation split only; the test split enters
  // after fitting.
  std::vector<LabeledTriple> valid =
      gen_classification_negatives(graph.valid(), graph, config.train.seed ^ kClassifyValidSalt);
  ClassifierModel fitted = fit_thresholds(valid, scorer);
  std::vector<LabeledTriple> test =
      gen_classification_negatives(graph.test(), graph, config.train.seed ^ kClassifyTestSalt);
  ClassificationReport report = eval_classification(test, fitted, scorer);

  std::ostringstream body;
  body << "task = classify\n";
  body << "model = " << model_name(config.model) << "\n";
  body << "setting = " << setting_name(config.train.setting) << "\n";
  body << "score_mode = " << score_mode_name(config.train.score_mode) << "\n";
  body << "n_test_labeled = " << report.n << "\n";
  body << "accuracy = " << line("%.2f", report.accuracy * 100) << "\n";
  body << "valid_accuracy = " << line("%.2f", fitted.accuracy_valid * 100) << "\n";
  body << "fallback_threshold = " << format_real(fitted.fallback_threshold) << "\n";
  body << "\n";
  body << line("%-20s  %6s  %8s  %12s  %s\n", "relation", "n", "acc", "threshold", "note");
  for (const auto& pr : report.per_relation) {
    auto it = fitted.thresholds.find(pr.rel);
    bool single = it != fitted.thresholds.end() && it->second.single_label;
    body << line("%-20s  %6zu  %8.2f  %12.6g  %s\n", graph.relations().label(pr.rel).c_str(),
                 pr.n, pr.accuracy * 100, pr.threshold, single ? "single-label" : "");
  }

  std::filesystem::create_directories(config.reports_dir());
  std::filesystem::path path =
      config.reports_dir() / (std::string("classify_") + model_name(config.model) + ".txt");
  write_text_file(path, body.str());

  out << body.str();
  out << "report: " << path.string() << "\n";
  return report;
}

RetrofitResult cmd_retrofit(const ExperimentConfig& config, std::ostream& out) {
  if (config.triples.empty()) throw_error(ErrorCategory::Config, "triples path not set");
  if (config.retrofit_input.empty()) throw_error(ErrorCategory::Config, "retrofit_input not set");

  KnowledgeGraph graph = load_triples(config.triples);
  VectorTable table = load_vector_file(config.retrofit_input);
  RetrofitResult result = retrofit(table, graph, config.retrofit_alpha, config.retrofit_beta,
                                   config.retrofit_iterations);

  std::filesystem::path out_path = config.retrofit_output;
  if (out_path.empty()) {
    std::filesystem::create_directories(config.resources_dir());
    out_path = config.resources_dir() / "retrofitted.vec";
  } else if (out_path.has_parent_path()) {
    std::filesystem::create_directories(out_path.parent_path());
  }
  save_vector_file(out_path, result.vectors);

  std::ostringstream trace;
  for (Real v : result.objective) trace << format_exact(v) << "\n";
  std::filesystem::create_directories(config.reports_dir());
  write_text_file(config.reports_dir() / "retrofit_objective.txt", trace.str());

  out << "retrofit: " << table.size() << " keys, objective "
      << format_real(result.objective.front()) << " -> " << format_real(result.objective.back())
      << " over " << (result.objective.size() - 1) << " iterations\n";
  out << "vectors: " << out_path.string() << "\n";
  return result;
}

}  // namespace cskge
