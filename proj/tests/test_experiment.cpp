#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <sstream>

#include "cskge/error.hpp"
#include "cskge/experiment.hpp"
#include "support.hpp"

using namespace cskge;

namespace {

// Ten triples over two relations, all labels single tokens.
const char* kToyTriples =
    "cat\tisa\tanimal\n"
    "dog\tisa\tanimal\n"
    "bird\tisa\tanimal\n"
    "fish\tisa\tanimal\n"
    "cow\tisa\tanimal\n"
    "cat\tlikes\tfish\n"
    "dog\tlikes\tcat\n"
    "bird\tlikes\tfish\n"
    "cow\tlikes\tdog\n"
    "fish\tlikes\tbird\n";

const char* kToyWords =
    "cat 1.0 0.0 0.5\n"
    "dog 0.0 1.0 0.5\n"
    "bird 1.0 1.0 0.0\n"
    "fish 0.5 0.5 0.5\n"
    "cow 0.25 0.75 0.5\n"
    "animal 0.5 0.5 1.0\n";

ExperimentConfig toy_config(const std::filesystem::path& dir) {
  ExperimentConfig config;
  config.triples = dir / "triples.tsv";
  config.txt_vectors = dir / "words.vec";
  config.output_dir = dir / "run";
  config.train.dim = 3;
  config.train.batch_size = 4;
  config.train.epochs = 5;
  config.train.patience = 5;
  config.train.learning_rate = 0.05;
  config.train.seed = 5;
  config.split_seed = 2;
  finalize_config(config);
  return config;
}

std::string quiet_run(const std::function<void(std::ostream&)>& fn) {
  std::ostringstream out;
  fn(out);
  return out.str();
}

// Rebuilds the vocabulary exactly as training sees it: split files scanned in
// train, valid, test order.
KnowledgeGraph split_view(const ExperimentConfig& config) {
  Vocabulary concepts, relations;
  std::array<std::vector<Triple>, 3> parts;
  const std::array<const char*, 3> names = {"train.tsv", "valid.tsv", "test.tsv"};
  for (std::size_t i = 0; i < names.size(); ++i) {
    KnowledgeGraph piece = load_triples(config.splits_dir() / names[i], true);
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

}  // namespace

TEST_CASE("cmd_split conserves triples, writes a manifest and reruns identically") {
  testsupport::TempDir dir;
  testsupport::write_file(dir.file("triples.tsv"), kToyTriples);
  testsupport::write_file(dir.file("words.vec"), kToyWords);
  ExperimentConfig config = toy_config(dir.path());

  std::ostringstream out;
  SplitOutcome outcome = cmd_split(config, out);
  CHECK(outcome.total == 10);
  int sum = 0;
  for (const auto& rc : outcome.stats.per_relation) {
    CHECK(rc.total == rc.train + rc.valid + rc.test);
    sum += rc.total;
  }
  CHECK(sum == 10);

  auto manifest = testsupport::read_file(config.splits_dir() / "manifest.txt");
  CHECK(manifest.find("total = 10") != std::string::npos);
  CHECK(manifest.find("seed = 2") != std::string::npos);
  CHECK(manifest.find("checksum = ") != std::string::npos);

  auto train1 = testsupport::read_file(config.splits_dir() / "train.tsv");
  auto valid1 = testsupport::read_file(config.splits_dir() / "valid.tsv");
  auto test1 = testsupport::read_file(config.splits_dir() / "test.tsv");
  quiet_run([&](std::ostream& o) { cmd_split(config, o); });
  CHECK(testsupport::read_file(config.splits_dir() / "train.tsv") == train1);
  CHECK(testsupport::read_file(config.splits_dir() / "valid.tsv") == valid1);
  CHECK(testsupport::read_file(config.splits_dir() / "test.tsv") == test1);
  CHECK(testsupport::read_file(config.splits_dir() / "manifest.txt") == manifest);

  config.split_seed = 3;
  quiet_run([&](std::ostream& o) { cmd_split(config, o); });
  CHECK(testsupport::read_file(config.splits_dir() / "manifest.txt") != manifest);

  config.ratios = SplitRatios{0.5, 0.5, 0.5};
  try {
    quiet_run([&](std::ostream& o) { cmd_split(config, o); });
    FAIL("expected config error");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::Config);
  }
}

TEST_CASE("cmd_prepare builds hand-checkable tables") {
  testsupport::TempDir dir;
  testsupport::write_file(dir.file("triples.tsv"), kToyTriples);
  testsupport::write_file(dir.file("words.vec"), kToyWords);
  ExperimentConfig config = toy_config(dir.path());

  SUBCASE("txt at the target dimension is written unchanged") {
    config.model = ModelKind::TransE_TXT;
    finalize_config(config);
    std::ostringstream out;
    cmd_prepare(config, out);
    CHECK(out.str().find("txt: covered 6/6") != std::string::npos);

    VectorTable words = load_vector_file(dir.file("words.vec"));
    VectorTable prepared = load_vector_file(config.resources_dir() / "txt.vec");
    REQUIRE(prepared.size() == 6);
    for (int i = 0; i < prepared.size(); ++i) {
      auto src = words.find(prepared.key(i));
      REQUIRE(src.has_value());
      CHECK(prepared.row(i) == words.row(*src));
    }
  }

  SUBCASE("ck vectors equal the hand mean of instance vectors") {
    config.model = ModelKind::TransE_CK;
    config.ck_vectors = dir.file("words.vec");
    config.ck_instances = dir.file("instances.tsv");
    testsupport::write_file(dir.file("instances.tsv"), "animal\tcat|dog\n");
    finalize_config(config);
    quiet_run([&](std::ostream& o) { cmd_prepare(config, o); });

    VectorTable prepared = load_vector_file(config.resources_dir() / "ck.vec");
    REQUIRE(prepared.size() == 1);
    CHECK(prepared.key(0) == "animal");
    RowVector want(3);
    want << 0.5, 0.5, 0.5;
    CHECK((prepared.row(0) - want).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("multi-word labels average their found tokens") {
    testsupport::write_file(dir.file("triples.tsv"),
                            "cat\tisa\tsmall_animal\n"
                            "dog\tisa\tsmall_animal\n"
                            "bird\tlikes\tcat\n");
    config.model = ModelKind::TransE_TXT;
    finalize_config(config);
    quiet_run([&](std::ostream& o) { cmd_prepare(config, o); });
    VectorTable prepared = load_vector_file(config.resources_dir() / "txt.vec");
    auto row = prepared.find("small_animal");
    REQUIRE(row.has_value());
    RowVector want(3);
    want << 0.5, 0.5, 1.0;  // only "animal" resolves
    CHECK((prepared.row(*row) - want).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("missing resource path is a config error") {
    config.model = ModelKind::TransE_AFF;
    finalize_config(config);
    try {
      quiet_run([&](std::ostream& o) { cmd_prepare(config, o); });
      FAIL("expected config error");
    } catch (const Error& e) {
      CHECK(e.category() == ErrorCategory::Config);
      CHECK(std::string(e.what()).find("aff") != std::string::npos);
    }
  }

  SUBCASE("zero coverage names the class") {
    testsupport::write_file(dir.file("words.vec"), "zebra 1.0 0.0 0.0\n");
    config.model = ModelKind::TransE_TXT;
    finalize_config(config);
    try {
      quiet_run([&](std::ostream& o) { cmd_prepare(config, o); });
      FAIL("expected coverage error");
    } catch (const Error& e) {
      CHECK(e.category() == ErrorCategory::Coverage);
      CHECK(std::string(e.what()).find("txt") != std::string::npos);
    }
  }

  SUBCASE("models without classes have nothing to prepare") {
    std::ostringstream out;
    cmd_prepare(config, out);
    CHECK(out.str().find("nothing to prepare") != std::string::npos);
  }
}

TEST_CASE("cmd_train echoes defaults, freezes semantics and reruns identically") {
  testsupport::TempDir dir;
  testsupport::write_file(dir.file("triples.tsv"), kToyTriples);
  testsupport::write_file(dir.file("words.vec"), kToyWords);
  ExperimentConfig config = toy_config(dir.path());
  config.model = ModelKind::TransE_TXT;
  finalize_config(config);

  quiet_run([&](std::ostream& o) { cmd_prepare(config, o); });
  quiet_run([&](std::ostream& o) { cmd_split(config, o); });

  SUBCASE("log header echoes the shipped defaults") {
    ExperimentConfig defaults = config;
    defaults.train = TrainConfig{};  // keep k = 100 and friends
    defaults.train.epochs = 2;
    finalize_config(defaults);
    quiet_run([&](std::ostream& o) { cmd_prepare(defaults, o); });  // re-align to k = 100
    quiet_run([&](std::ostream& o) { cmd_train(defaults, o); });
    auto log = testsupport::read_file(defaults.train_log_path());
    CHECK(log.find("# learning_rate = 0.01\n") != std::string::npos);
    CHECK(log.find("# margin = 1\n") != std::string::npos);
    CHECK(log.find("# dim = 100\n") != std::string::npos);
    CHECK(log.find("# batch_size = 5000\n") != std::string::npos);
    CHECK(log.find("# model = transe+txt\n") != std::string::npos);
    CHECK(log.find("epoch=1 mean_loss=") != std::string::npos);
    CHECK(log.find("valid_mean_rank_filtered=") != std::string::npos);
  }

  SUBCASE("defaults declare k = 100") {
    TrainConfig fresh;
    CHECK(fresh.dim == 100);
    CHECK(fresh.learning_rate == 0.01);
    CHECK(fresh.margin == 1.0);
    CHECK(fresh.batch_size == 5000);
  }

  SUBCASE("fixed training keeps the prepared vectors in the checkpoint") {
    std::ostringstream out;
    cmd_train(config, out);
    Checkpoint ckpt = load_checkpoint(config.checkpoint_path());

    KnowledgeGraph graph = split_view(config);
    VectorTable prepared = load_vector_file(config.resources_dir() / "txt.vec");
    REQUIRE(ckpt.state.resources.has(SemanticClass::Text));
    for (int i = 0; i < prepared.size(); ++i) {
      auto id = graph.concepts().find(prepared.key(i));
      REQUIRE(id.has_value());
      CHECK(ckpt.state.resources.vectors(SemanticClass::Text).row(*id) == prepared.row(i));
    }
    CHECK(ckpt.config.at("model") == "transe+txt");
    CHECK(ckpt.config.at("setting") == "fixed");
  }

  SUBCASE("identical seeded runs write identical checkpoints and logs") {
    quiet_run([&](std::ostream& o) { cmd_train(config, o); });
    auto ckpt1 = testsupport::read_file(config.checkpoint_path());
    auto log1 = testsupport::read_file(config.train_log_path());
    quiet_run([&](std::ostream& o) { cmd_train(config, o); });
    CHECK(testsupport::read_file(config.checkpoint_path()) == ckpt1);
    CHECK(testsupport::read_file(config.train_log_path()) == log1);
  }
}

TEST_CASE("cmd_eval ranks a hand-built perfect checkpoint at 1") {
  testsupport::TempDir dir;
  ExperimentConfig config;
  config.output_dir = dir.path() / "run";
  config.train.dim = 6;
  finalize_config(config);

  // Six concepts on the unit axes; the single relation translates a -> b
  // exactly, so the test triple scores zero and everything else is off by a
  // full basis step.
  Vocabulary concepts, relations;
  std::vector<Triple> train, valid, test;
  auto add = [&](const char* h, const char* r, const char* t, std::vector<Triple>& split) {
    Triple x;
    x.head = concepts.add(h);
    x.rel = relations.add(r);
    x.tail = concepts.add(t);
    split.push_back(x);
  };
  add("c", "r", "d", train);
  add("e", "r", "f", valid);
  add("a", "r", "b", test);
  KnowledgeGraph graph = KnowledgeGraph::make(concepts, relations, train, valid, test);

  std::filesystem::create_directories(config.splits_dir());
  save_triples(config.splits_dir() / "train.tsv", graph, graph.train());
  save_triples(config.splits_dir() / "valid.tsv", graph, graph.valid());
  save_triples(config.splits_dir() / "test.tsv", graph, graph.test());

  TrainState state;
  state.space.concepts = Matrix::Identity(6, 6);
  int a = *graph.concepts().find("a");
  int b = *graph.concepts().find("b");
  state.space.relations = state.space.concepts.row(b) - state.space.concepts.row(a);

  std::filesystem::create_directories(config.checkpoints_dir());
  save_checkpoint(make_checkpoint(graph, state, {}), config.checkpoint_path());

  std::ostringstream out;
  LinkPredictionReport concept_report = cmd_eval_link(config, PredictionTask::Concept, out);
  CHECK(concept_report.mean_rank_raw == 1.0);
  CHECK(concept_report.mean_rank_filtered == 1.0);
  CHECK(concept_report.hits10_raw == 100.0);
  CHECK(concept_report.hits10_filtered == 100.0);
  CHECK(concept_report.n_test == 1);
  CHECK(concept_report.n_rankings == 2);

  LinkPredictionReport rel_report = cmd_eval_link(config, PredictionTask::Relation, out);
  CHECK(rel_report.mean_rank_raw == 1.0);
  CHECK(rel_report.hits10_filtered == 100.0);
  CHECK(rel_report.n_rankings == 1);

  auto report_path = config.reports_dir() / "concept_transe.txt";
  auto body1 = testsupport::read_file(report_path);
  CHECK(body1.find("task = concept") != std::string::npos);
  quiet_run([&](std::ostream& o) { cmd_eval_link(config, PredictionTask::Concept, o); });
  CHECK(testsupport::read_file(report_path) == body1);
}

TEST_CASE("cmd_eval refuses a checkpoint from another dataset") {
  testsupport::TempDir dir;
  testsupport::write_file(dir.file("triples.tsv"), kToyTriples);
  testsupport::write_file(dir.file("words.vec"), kToyWords);
  ExperimentConfig config = toy_config(dir.path());
  quiet_run([&](std::ostream& o) { cmd_split(config, o); });
  quiet_run([&](std::ostream& o) { cmd_train(config, o); });

  std::ostringstream out;
  CHECK_NOTHROW(cmd_eval_link(config, PredictionTask::Concept, out));

  // Re-splitting reassigns concept ids, so the embedding rows no longer line
  // up; the hashes are order-sensitive on purpose.
  config.split_seed = 9;
  quiet_run([&](std::ostream& o) { cmd_split(config, o); });
  try {
    quiet_run([&](std::ostream& o) { cmd_eval_link(config, PredictionTask::Concept, o); });
    FAIL("expected incompatible error");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::Incompatible);
  }

  // A graph with a different concept set is not compatible either.
  testsupport::write_file(dir.file("triples.tsv"), std::string(kToyTriples) + "zeb\tisa\tanimal\n");
  quiet_run([&](std::ostream& o) { cmd_split(config, o); });
  try {
    quiet_run([&](std::ostream& o) { cmd_eval_link(config, PredictionTask::Concept, o); });
    FAIL("expected incompatible error");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::Incompatible);
  }
}

TEST_CASE("cmd_eval_classify fits thresholds on validation and reports them") {
  testsupport::TempDir dir;
  testsupport::write_file(dir.file("triples.tsv"), kToyTriples);
  testsupport::write_file(dir.file("words.vec"), kToyWords);
  ExperimentConfig config = toy_config(dir.path());
  config.train.epochs = 15;
  config.train.patience = 15;
  quiet_run([&](std::ostream& o) { cmd_split(config, o); });
  quiet_run([&](std::ostream& o) { cmd_train(config, o); });

  std::ostringstream out;
  ClassificationReport report = cmd_eval_classify(config, out);
  CHECK(report.n > 0);
  CHECK(report.accuracy >= 0.0);
  CHECK(report.accuracy <= 1.0);

  auto path = config.reports_dir() / "classify_transe.txt";
  auto body = testsupport::read_file(path);
  CHECK(body.find("accuracy = ") != std::string::npos);
  CHECK(body.find("threshold") != std::string::npos);
  CHECK(body.find("isa") != std::string::npos);

  quiet_run([&](std::ostream& o) { cmd_eval_classify(config, o); });
  CHECK(testsupport::read_file(path) == body);
}

TEST_CASE("cmd_retrofit with beta 0 reproduces the input table") {
  testsupport::TempDir dir;
  testsupport::write_file(dir.file("triples.tsv"), kToyTriples);
  testsupport::write_file(dir.file("words.vec"), kToyWords);
  ExperimentConfig config = toy_config(dir.path());
  config.retrofit_input = dir.file("words.vec");
  config.retrofit_beta = 0.0;
  config.retrofit_iterations = 4;

  std::ostringstream out;
  RetrofitResult result = cmd_retrofit(config, out);
  CHECK(result.objective.size() == 5);

  VectorTable src = load_vector_file(dir.file("words.vec"));
  VectorTable got = load_vector_file(config.resources_dir() / "retrofitted.vec");
  REQUIRE(got.size() == src.size());
  CHECK(got.vectors() == src.vectors());

  auto trace = testsupport::read_file(config.reports_dir() / "retrofit_objective.txt");
  CHECK(std::count(trace.begin(), trace.end(), '\n') == 5);
}

TEST_CASE("restricting coverage drops uncovered concepts before the split") {
  testsupport::TempDir dir;
  testsupport::write_file(dir.file("triples.tsv"), kToyTriples);
  // "cow" has no word vector, so txt coverage misses it.
  testsupport::write_file(dir.file("words.vec"),
                          "cat 1.0 0.0 0.5\n"
                          "dog 0.0 1.0 0.5\n"
                          "bird 1.0 1.0 0.0\n"
                          "fish 0.5 0.5 0.5\n"
                          "animal 0.5 0.5 1.0\n");
  ExperimentConfig config = toy_config(dir.path());
  config.model = ModelKind::TransE_TXT;
  config.restrict_coverage = true;
  finalize_config(config);

  quiet_run([&](std::ostream& o) { cmd_prepare(config, o); });
  std::ostringstream out;
  cmd_split(config, out);
  CHECK(out.str().find("coverage restriction kept 5/6 concepts") != std::string::npos);

  auto manifest = testsupport::read_file(config.splits_dir() / "manifest.txt");
  CHECK(manifest.find("concepts = 5") != std::string::npos);
  // 2 of the 10 triples touch cow.
  CHECK(manifest.find("total = 8") != std::string::npos);

  quiet_run([&](std::ostream& o) { cmd_train(config, o); });
  Checkpoint ckpt = load_checkpoint(config.checkpoint_path());
  CHECK(ckpt.state.space.concepts.rows() == 5);
  for (int c = 0; c < 5; ++c) CHECK(ckpt.state.resources.covered(SemanticClass::Text, c));
}
