#include "cskge/energy.hpp"

namespace cskge {

const char* score_mode_name(ScoreMode m) {
  return m == ScoreMode::Total ? "total" : "knowledge";
}

ScoreMode parse_score_mode(std::string_view name) {
  if (name == "total") return ScoreMode::Total;
  if (name == "knowledge") return ScoreMode::KnowledgeOnly;
  throw_error(ErrorCategory::Config, "unknown score mode: " + std::string(name));
}

const char* norm_name(Norm n) { return n == Norm::L1 ? "l1" : "l2"; }

Norm parse_norm(std::string_view name) {
  if (name == "l1") return Norm::L1;
  if (name == "l2") return Norm::L2;
  throw_error(ErrorCategory::Config, "unknown norm: " + std::string(name));
}

namespace {

void check_triple(const EmbeddingSpace& space, const Triple& t) {
  if (t.head < 0 || t.head >= space.concepts.rows() || t.tail < 0 ||
      t.tail >= space.concepts.rows() || t.rel < 0 || t.rel >= space.relations.rows())
    throw_error(ErrorCategory::Domain,
                "triple id out of range: (" + std::to_string(t.head) + "," + std::to_string(t.rel) +
                    "," + std::to_string(t.tail) + ")");
}

bool class_covered(const SemanticResourceSet& resources, SemanticClass cls, const Triple& t) {
  return resources.covered(cls, t.head) && resources.covered(cls, t.tail);
}

}  // namespace

Real knowledge_energy(const EmbeddingSpace& space, const Triple& t, Norm norm) {
  check_triple(space, t);
  return dissimilarity(space.concepts.row(t.head) + space.relations.row(t.rel),
                       space.concepts.row(t.tail), norm);
}

Real transr_energy(const EmbeddingSpace& space, const TransRParams& params, const Triple& t,
                   Norm norm) {
  check_triple(space, t);
  if (static_cast<std::size_t>(t.rel) >= params.projections.size() ||
      t.rel >= params.relations.rows())
    throw_error(ErrorCategory::Domain, "relation id out of range for TransR parameters");
  const Matrix& m = params.projections[static_cast<std::size_t>(t.rel)];
  return dissimilarity(space.concepts.row(t.head) * m + params.relations.row(t.rel),
                       space.concepts.row(t.tail) * m, norm);
}

Real semantic_energy(const EmbeddingSpace& space, const SemanticResourceSet& resources,
                     SemanticClass cls, const Triple& t, Norm norm) {
  check_triple(space, t);
  if (!class_covered(resources, cls, t))
    throw_error(ErrorCategory::Coverage, std::string("triple endpoint not covered by class '") +
                                             class_tag(cls) + "'");
  const auto& sem = resources.vectors(cls);
  auto hs = sem.row(t.head);
  auto ts = sem.row(t.tail);
  auto hk = space.concepts.row(t.head);
  auto tk = space.concepts.row(t.tail);
  auto r = space.relations.row(t.rel);
  return dissimilarity(hs + r, ts, norm) + dissimilarity(hs + r, tk, norm) +
         dissimilarity(hk + r, ts, norm);
}

Real total_energy(const EmbeddingSpace& space, const SemanticResourceSet& resources,
                  const Triple& t, const EnergyConfig& config) {
  Real e = knowledge_energy(space, t, config.norm);
  if (config.score_mode == ScoreMode::KnowledgeOnly) return e;
  Real total = e;
  for (SemanticClass cls : kAllClasses) {
    if (!config.active.contains(cls)) continue;
    total += class_covered(resources, cls, t) ? semantic_energy(space, resources, cls, t, config.norm)
                                              : e;
  }
  return total;
}

namespace {

void add_knowledge_gradient(const EmbeddingSpace& space, const Triple& t, Norm norm, Real scale,
                            GradientTable& concepts, GradientTable& relations) {
  RowVector g = norm_gradient(
      space.concepts.row(t.head) + space.relations.row(t.rel) - space.concepts.row(t.tail), norm);
  concepts.add(t.head, g, scale);
  concepts.add(t.tail, g, -scale);
  relations.add(t.rel, g, scale);
}

}  // namespace

void add_total_energy_gradient(const EmbeddingSpace& space, const SemanticResourceSet& resources,
                               const Triple& t, const EnergyConfig& config, Real scale,
                               EnergyGradients& grads) {
  check_triple(space, t);
  add_knowledge_gradient(space, t, config.norm, scale, grads.concepts, grads.relations);
  if (config.score_mode == ScoreMode::KnowledgeOnly) return;

  for (SemanticClass cls : kAllClasses) {
    if (!config.active.contains(cls)) continue;
    if (!class_covered(resources, cls, t)) {
      add_knowledge_gradient(space, t, config.norm, scale, grads.concepts, grads.relations);
      continue;
    }
    const auto& sem = resources.vectors(cls);
    auto hs = sem.row(t.head);
    auto ts = sem.row(t.tail);
    auto hk = space.concepts.row(t.head);
    auto tk = space.concepts.row(t.tail);
    auto r = space.relations.row(t.rel);
    RowVector g1 = norm_gradient(hs + r - ts, config.norm);
    RowVector g2 = norm_gradient(hs + r - tk, config.norm);
    RowVector g3 = norm_gradient(hk + r - ts, config.norm);

    auto& sem_grads = grads.semantic[static_cast<std::size_t>(cls)];
    sem_grads.add(t.head, g1 + g2, scale);
    sem_grads.add(t.tail, g1 + g3, -scale);
    grads.concepts.add(t.head, g3, scale);
    grads.concepts.add(t.tail, g2, -scale);
    grads.relations.add(t.rel, g1 + g2 + g3, scale);
  }
}

void add_transr_energy_gradient(const EmbeddingSpace& space, const TransRParams& params,
                                const Triple& t, Norm norm, Real scale, TransRGradients& grads) {
  check_triple(space, t);
  const Matrix& m = params.projections[static_cast<std::size_t>(t.rel)];
  auto h = space.concepts.row(t.head);
  auto tl = space.concepts.row(t.tail);
  RowVector g = norm_gradient(h * m + params.relations.row(t.rel) - tl * m, norm);

  RowVector back = g * m.transpose();
  grads.entities.add(t.head, back, scale);
  grads.entities.add(t.tail, back, -scale);
  grads.relations.add(t.rel, g, scale);

  auto [it, fresh] = grads.projections.try_emplace(t.rel);
  if (fresh) it->second = Matrix::Zero(m.rows(), m.cols());
  it->second.noalias() += scale * ((h - tl).transpose() * g);
}

TripleScorer make_scorer(const EmbeddingSpace& space, const SemanticResourceSet& resources,
                         const EnergyConfig& config) {
  return [&space, &resources, config](const Triple& t) {
    return total_energy(space, resources, t, config);
  };
}

TripleScorer make_transr_scorer(const EmbeddingSpace& space, const TransRParams& params,
                                Norm norm) {
  return [&space, &params, norm](const Triple& t) { return transr_energy(space, params, t, norm); };
}

}  // namespace cskge
