#include <doctest.h>

#include <cmath>

#include "cskge/error.hpp"
#include "cskge/evaluation.hpp"
#include "cskge/training.hpp"
#include "support.hpp"

using namespace cskge;

namespace {

TrainConfig small_config(Index dim = 4) {
  TrainConfig c;
  c.dim = dim;
  c.batch_size = 16;
  c.epochs = 3;
  c.learning_rate = 0.05;
  c.seed = 7;
  return c;
}

SemanticResourceSet full_coverage(const KnowledgeGraph& g, SemanticClass cls, Index dim,
                                  std::uint64_t seed) {
  Rng rng(seed);
  Matrix m(g.concepts().size(), dim);
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < dim; ++j) m(i, j) = rng.uniform(-1, 1);
  }
  SemanticResourceSet res;
  res.set_class(cls, std::move(m), std::vector<std::uint8_t>(static_cast<std::size_t>(g.concepts().size()), 1));
  return res;
}

}  // namespace

TEST_CASE("config validation catches bad values") {
  TrainConfig c = small_config();
  c.learning_rate = 0;
  CHECK_THROWS_AS(c.validate(), Error);
  c = small_config();
  c.margin = -1;
  CHECK_THROWS_AS(c.validate(), Error);
  c = small_config();
  c.corruption = {0.5, 0.5, 0.5};
  CHECK_THROWS_AS(c.validate(), Error);
  c = small_config();
  c.corruption = {0.5, 0.5, -0.0};
  c.corruption.rel = -0.1;
  c.corruption.head = 0.55;
  c.corruption.tail = 0.55;
  CHECK_THROWS_AS(c.validate(), Error);
  c = small_config();
  c.use_transr = true;
  c.classes = {SemanticClass::Text};
  CHECK_THROWS_AS(c.validate(), Error);
  c = small_config();
  c.epochs = 0;
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("init draws unit concept rows and free relation rows, deterministically") {
  auto g = testsupport::random_graph(30, 5, 100, 3);
  auto cfg = small_config(6);

  auto a = init_embeddings(g, cfg, {});
  auto b = init_embeddings(g, cfg, {});
  CHECK(a.space.concepts == b.space.concepts);
  CHECK(a.space.relations == b.space.relations);

  for (Index i = 0; i < a.space.concepts.rows(); ++i)
    CHECK(std::abs(a.space.concepts.row(i).norm() - 1.0) < 1e-12);

  bool any_non_unit = false;
  for (Index i = 0; i < a.space.relations.rows(); ++i)
    any_non_unit = any_non_unit || std::abs(a.space.relations.row(i).norm() - 1.0) > 1e-6;
  CHECK(any_non_unit);
  Real bound = 6.0 / std::sqrt(6.0);
  CHECK(a.space.relations.cwiseAbs().maxCoeff() <= bound);

  cfg.seed = 8;
  auto c = init_embeddings(g, cfg, {});
  CHECK(a.space.concepts != c.space.concepts);
}

TEST_CASE("init copies semantic vectors and checks resource presence") {
  auto g = testsupport::random_graph(10, 2, 30, 4);
  auto cfg = small_config(4);
  cfg.classes = {SemanticClass::Text};

  auto res = full_coverage(g, SemanticClass::Text, 4, 9);
  auto state = init_embeddings(g, cfg, res);
  CHECK(state.resources.vectors(SemanticClass::Text) == res.vectors(SemanticClass::Text));

  CHECK_THROWS_AS(init_embeddings(g, cfg, {}), Error);

  auto wrong_dim = full_coverage(g, SemanticClass::Text, 5, 9);
  CHECK_THROWS_AS(init_embeddings(g, cfg, wrong_dim), Error);
}

TEST_CASE("init prepares transr identity projections") {
  auto g = testsupport::random_graph(10, 3, 30, 5);
  auto cfg = small_config(4);
  cfg.use_transr = true;
  cfg.transr_dim = 3;

  auto state = init_embeddings(g, cfg, {});
  REQUIRE(state.transr.has_value());
  CHECK(state.transr->relations.rows() == 3);
  CHECK(state.transr->relations.cols() == 3);
  REQUIRE(state.transr->projections.size() == 3);
  CHECK(state.transr->projections[0] == Matrix::Identity(4, 3));
}

TEST_CASE("margin loss follows the hinge") {
  CHECK(margin_loss(0.5, 2.0, 1.0) == 0.0);
  CHECK(margin_loss(1.0, 1.0, 1.0) == 1.0);
  CHECK(margin_loss(1.0, 1.2, 1.0) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("sgd_step leaves the state alone when every pair is satisfied") {
  auto g = testsupport::random_graph(8, 2, 20, 6);
  auto cfg = small_config(3);
  cfg.margin = 1e-9;
  auto state = init_embeddings(g, cfg, {});

  // Make the positive triple an exact translation so pos energy is 0 and the
  // negative keeps a comfortable margin.
  state.space.concepts.row(1) = state.space.concepts.row(0) + state.space.relations.row(0);
  Matrix concepts_before = state.space.concepts;
  Matrix relations_before = state.space.relations;

  TrainPair pair;
  pair.positive = Triple{0, 0, 1};
  pair.negative = NegativeSample{pair.positive, Triple{0, 0, 2}, Slot::Tail};
  std::vector<TrainPair> batch{pair};
  Real loss = sgd_step(state, batch, cfg);
  CHECK(loss == 0.0);
  CHECK(state.space.concepts == concepts_before);
  CHECK(state.space.relations == relations_before);
}

TEST_CASE("sgd_step reproduces a finite-difference oracle on one pair") {
  auto g = testsupport::random_graph(6, 2, 15, 7);
  auto cfg = small_config(3);
  cfg.classes = {SemanticClass::Text};
  cfg.setting = Setting::Variable;
  cfg.learning_rate = 0.01;
  auto res = full_coverage(g, SemanticClass::Text, 3, 10);
  auto state = init_embeddings(g, cfg, res);

  TrainPair pair;
  pair.positive = Triple{0, 0, 1};
  pair.negative = NegativeSample{pair.positive, Triple{2, 0, 1}, Slot::Head};

  const EnergyConfig ecfg = cfg.energy_config();
  auto loss_of = [&](TrainState& s) {
    return margin_loss(total_energy(s.space, s.resources, pair.positive, ecfg),
                       total_energy(s.space, s.resources, pair.negative.corrupted, ecfg),
                       cfg.margin);
  };

  TrainState reference = state;
  REQUIRE(loss_of(reference) > 0);

  // Finite-difference the loss over every participating row, then apply the
  // same update + renormalization rule.
  const Real eps = 1e-6;
  auto fd_update = [&](Matrix& m, Index row, bool renorm) {
    RowVector grad(m.cols());
    for (Index j = 0; j < m.cols(); ++j) {
      Real keep = m(row, j);
      m(row, j) = keep + eps;
      Real up = loss_of(reference);
      m(row, j) = keep - eps;
      Real down = loss_of(reference);
      m(row, j) = keep;
      grad[j] = (up - down) / (2 * eps);
    }
    m.row(row) -= cfg.learning_rate * grad;
    if (renorm) m.row(row).normalize();
  };

  std::vector<TrainPair> batch{pair};
  sgd_step(state, batch, cfg);

  for (int id : {0, 1, 2}) fd_update(reference.space.concepts, id, true);
  fd_update(reference.space.relations, 0, false);
  for (int id : {0, 1, 2}) fd_update(reference.resources.mutable_vectors(SemanticClass::Text), id, true);

  CHECK((state.space.concepts - reference.space.concepts).cwiseAbs().maxCoeff() < 1e-4);
  CHECK((state.space.relations - reference.space.relations).cwiseAbs().maxCoeff() < 1e-4);
  CHECK((state.resources.vectors(SemanticClass::Text) -
         reference.resources.vectors(SemanticClass::Text))
            .cwiseAbs()
            .maxCoeff() < 1e-4);
}

TEST_CASE("fixed setting freezes semantic vectors bitwise") {
  auto g = testsupport::random_graph(12, 3, 50, 8);
  auto cfg = small_config(4);
  cfg.classes = {SemanticClass::Text, SemanticClass::Affect};
  cfg.setting = Setting::Fixed;
  SemanticResourceSet res = full_coverage(g, SemanticClass::Text, 4, 11);
  {
    auto aff = full_coverage(g, SemanticClass::Affect, 4, 12);
    res.set_class(SemanticClass::Affect, aff.vectors(SemanticClass::Affect),
                  aff.coverage(SemanticClass::Affect));
  }
  auto state = init_embeddings(g, cfg, res);
  Matrix txt_before = state.resources.vectors(SemanticClass::Text);
  Matrix aff_before = state.resources.vectors(SemanticClass::Affect);

  Rng rng(13);
  for (int step = 0; step < 10; ++step) {
    std::vector<TrainPair> batch;
    for (const Triple& t : g.train())
      batch.push_back(TrainPair{t, sample_negative(t, g, cfg.corruption, rng)});
    sgd_step(state, batch, cfg);
  }
  CHECK(state.resources.vectors(SemanticClass::Text) == txt_before);
  CHECK(state.resources.vectors(SemanticClass::Affect) == aff_before);

  for (Index i = 0; i < state.space.concepts.rows(); ++i)
    CHECK(std::abs(state.space.concepts.row(i).norm() - 1.0) < 1e-6);
}

TEST_CASE("variable setting trains semantic vectors") {
  auto g = testsupport::random_graph(12, 3, 50, 9);
  auto cfg = small_config(4);
  cfg.classes = {SemanticClass::Text};
  cfg.setting = Setting::Variable;
  auto res = full_coverage(g, SemanticClass::Text, 4, 14);
  auto state = init_embeddings(g, cfg, res);
  Matrix before = state.resources.vectors(SemanticClass::Text);

  Rng rng(15);
  std::vector<TrainPair> batch;
  for (const Triple& t : g.train())
    batch.push_back(TrainPair{t, sample_negative(t, g, cfg.corruption, rng)});
  Real loss = sgd_step(state, batch, cfg);
  REQUIRE(loss > 0);
  CHECK(state.resources.vectors(SemanticClass::Text) != before);
}

TEST_CASE("sgd_step raises a numeric error on non-finite state") {
  auto g = testsupport::random_graph(8, 2, 20, 10);
  auto cfg = small_config(3);
  auto state = init_embeddings(g, cfg, {});
  state.space.concepts(0, 0) = std::numeric_limits<Real>::quiet_NaN();

  TrainPair pair;
  pair.positive = Triple{0, 0, 1};
  pair.negative = NegativeSample{pair.positive, Triple{0, 0, 2}, Slot::Tail};
  std::vector<TrainPair> batch{pair};
  try {
    sgd_step(state, batch, cfg);
    FAIL("expected numeric error");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::Numeric);
  }
}

TEST_CASE("train logs one record per epoch and is deterministic") {
  auto planted = testsupport::planted_graph(20, 2, 60, 4, 21);
  auto g = split_per_relation(planted.pool, SplitRatios{}, 5);

  auto cfg = small_config(4);
  cfg.epochs = 1;
  auto r1 = train(g, cfg, {});
  CHECK(r1.log.size() == 1);
  CHECK(r1.log[0].epoch == 1);
  CHECK(std::isfinite(r1.log[0].mean_loss));
  CHECK(r1.log[0].valid_mean_rank >= 1.0);

  cfg.epochs = 4;
  auto r2 = train(g, cfg, {});
  auto r3 = train(g, cfg, {});
  CHECK(r2.best.space.concepts == r3.best.space.concepts);
  CHECK(r2.best.space.relations == r3.best.space.relations);
  CHECK(r2.best_epoch == r3.best_epoch);
  REQUIRE(r2.log.size() == r3.log.size());
  for (std::size_t i = 0; i < r2.log.size(); ++i) {
    CHECK(r2.log[i].mean_loss == r3.log[i].mean_loss);
    CHECK(r2.log[i].valid_mean_rank == r3.log[i].valid_mean_rank);
  }

  cfg.seed = 99;
  auto r4 = train(g, cfg, {});
  CHECK(r4.best.space.concepts != r2.best.space.concepts);
}

TEST_CASE("train loss decreases on a planted translation graph") {
  auto planted = testsupport::planted_graph(50, 4, 400, 8, 31);
  auto g = split_per_relation(planted.pool, SplitRatios{}, 6);

  std::vector<Real> deltas;
  for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
    TrainConfig cfg;
    cfg.dim = 8;
    cfg.batch_size = 64;
    cfg.epochs = 10;
    cfg.learning_rate = 0.05;
    cfg.margin = 1.0;
    cfg.seed = seed;
    cfg.patience = 100;
    auto r = train(g, cfg, {});
    REQUIRE(r.log.size() == 10);
    deltas.push_back(r.log.front().mean_loss - r.log.back().mean_loss);
  }
  std::sort(deltas.begin(), deltas.end());
  CHECK(deltas[2] > 0);
}

TEST_CASE("trained energies separate golden from corrupted triples") {
  auto planted = testsupport::planted_graph(60, 3, 400, 8, 41, 1.0);
  auto g = split_per_relation(planted.pool, SplitRatios{}, 7);

  TrainConfig cfg;
  cfg.dim = 8;
  cfg.batch_size = 32;
  cfg.epochs = 400;
  cfg.learning_rate = 0.05;
  cfg.margin = 0.5;
  cfg.seed = 3;
  cfg.patience = 400;
  auto r = train(g, cfg, {});

  const EnergyConfig ecfg = cfg.energy_config();
  Rng rng(42);
  int wins = 0, total = 0;
  Real golden_sum = 0, corrupted_sum = 0;
  for (const Triple& t : g.valid()) {
    auto neg = sample_negative(t, g, cfg.corruption, rng);
    Real golden = total_energy(r.best.space, r.best.resources, t, ecfg);
    Real corrupted = total_energy(r.best.space, r.best.resources, neg.corrupted, ecfg);
    golden_sum += golden;
    corrupted_sum += corrupted;
    wins += golden < corrupted;
    ++total;
  }
  CHECK(total > 0);
  CHECK(golden_sum / total < corrupted_sum / total);
  CHECK(static_cast<Real>(wins) / static_cast<Real>(total) >= 0.95);
}

TEST_CASE("train stops early when the validation metric stalls") {
  auto planted = testsupport::planted_graph(20, 2, 80, 4, 51);
  auto g = split_per_relation(planted.pool, SplitRatios{}, 8);

  TrainConfig cfg = small_config(4);
  cfg.learning_rate = 1e-12;  // nothing moves, so the metric never improves
  cfg.epochs = 50;
  cfg.patience = 3;
  auto r = train(g, cfg, {});
  CHECK(r.log.size() == 4);  // first epoch sets the best, then patience runs out
  CHECK(r.best_epoch == 1);
}

TEST_CASE("train without validation triples runs every epoch and keeps the final state") {
  auto g = testsupport::random_graph(10, 2, 30, 12);
  TrainConfig cfg = small_config(3);
  cfg.epochs = 5;
  cfg.patience = 1;
  auto r = train(g, cfg, {});
  CHECK(r.log.size() == 5);
  CHECK(std::isnan(r.log[0].valid_mean_rank));
  CHECK(std::isnan(r.best_valid));
  CHECK(r.best_epoch == 5);
}

TEST_CASE("train caps the validation subsample deterministically") {
  auto planted = testsupport::planted_graph(25, 2, 120, 4, 61);
  auto g = split_per_relation(planted.pool, SplitRatios{}, 9);
  REQUIRE(g.valid().size() > 4);

  TrainConfig cfg = small_config(4);
  cfg.epochs = 2;
  cfg.valid_sample = 4;
  auto a = train(g, cfg, {});
  auto b = train(g, cfg, {});
  CHECK(a.log[0].valid_mean_rank == b.log[0].valid_mean_rank);
  CHECK(a.log[0].valid_mean_rank >= 1.0);
}

TEST_CASE("transr training runs and improves the projected fit") {
  auto planted = testsupport::planted_graph(30, 3, 200, 5, 71);
  auto g = split_per_relation(planted.pool, SplitRatios{}, 10);

  TrainConfig cfg;
  cfg.dim = 5;
  cfg.use_transr = true;
  cfg.transr_dim = 5;
  cfg.batch_size = 32;
  cfg.epochs = 15;
  cfg.learning_rate = 0.03;
  cfg.seed = 2;
  cfg.patience = 15;

  std::vector<EpochRecord> seen;
  auto r = train(g, cfg, {}, [&](const EpochRecord& rec) { seen.push_back(rec); });
  CHECK(seen.size() == r.log.size());
  REQUIRE(r.best.transr.has_value());
  CHECK(r.log.front().mean_loss > r.log.back().mean_loss);

  // Projections should have moved off the identity.
  CHECK(r.best.transr->projections[0] != Matrix::Identity(5, 5));
}
