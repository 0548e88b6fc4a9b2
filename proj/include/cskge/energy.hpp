#pragma once

#include <array>
#include <functional>
#include <unordered_map>
#include <vector>

#include "cskge/error.hpp"
#include "cskge/knowledge_graph.hpp"
#include "cskge/resources.hpp"
#include "cskge/types.hpp"

namespace cskge {

enum class ScoreMode { Total, KnowledgeOnly };

const char* score_mode_name(ScoreMode m);
ScoreMode parse_score_mode(std::string_view name);

const char* norm_name(Norm n);
Norm parse_norm(std::string_view name);

struct EnergyConfig {
  Norm norm = Norm::L2;
  ClassSet active;
  ScoreMode score_mode = ScoreMode::Total;
};

// Knowledge vectors: one row per concept, one shared relation vector per
// relation, all in the same k-dimensional space.
struct EmbeddingSpace {
  Matrix concepts;
  Matrix relations;

  Index dim() const { return concepts.cols(); }
};

// Relation-space translations plus one k x d projection per relation.
struct TransRParams {
  Matrix relations;
  std::vector<Matrix> projections;

  Index dim() const { return relations.cols(); }
};

template <typename A, typename B>
Real dissimilarity(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b, Norm norm) {
  if (a.size() != b.size())
    throw_error(ErrorCategory::Domain, "dissimilarity on mismatched dimensions");
  if (norm == Norm::L1) return (a - b).template lpNorm<1>();
  return (a - b).norm();
}

// Gradient of ||u|| with respect to u: u/||u|| for L2 (zero near the origin),
// componentwise sign for L1.
template <typename U>
RowVector norm_gradient(const Eigen::MatrixBase<U>& u_expr, Norm norm) {
  RowVector u = u_expr;
  if (norm == Norm::L1) return u.array().sign().matrix();
  Real n = u.norm();
  if (n < 1e-12) return RowVector::Zero(u.size());
  return u / n;
}

Real knowledge_energy(const EmbeddingSpace& space, const Triple& t, Norm norm);
Real transr_energy(const EmbeddingSpace& space, const TransRParams& params, const Triple& t,
                   Norm norm);

// ||h_s + r - t_s|| + ||h_s + r - t_k|| + ||h_k + r - t_s|| with the shared
// relation vector. Both endpoints must be covered by the class.
Real semantic_energy(const EmbeddingSpace& space, const SemanticResourceSet& resources,
                     SemanticClass cls, const Triple& t, Norm norm);

// E_K plus the semantic energy of every active class. A class whose head or
// tail is uncovered contributes E_K instead, so the value is always defined.
// knowledge_only mode returns bare E_K.
Real total_energy(const EmbeddingSpace& space, const SemanticResourceSet& resources,
                  const Triple& t, const EnergyConfig& config);

// Sparse accumulator of per-row gradients.
struct GradientTable {
  std::unordered_map<int, RowVector> rows;

  void add(int i, const RowVector& g, Real scale) {
    auto [it, fresh] = rows.try_emplace(i);
    if (fresh)
      it->second = scale * g;
    else
      it->second += scale * g;
  }
};

struct EnergyGradients {
  GradientTable concepts;
  GradientTable relations;
  std::array<GradientTable, kNumClasses> semantic;
};

// Accumulates scale * d(total_energy)/d(vector) for every participating row.
// Classes falling back to E_K contribute the E_K gradient a second time.
void add_total_energy_gradient(const EmbeddingSpace& space, const SemanticResourceSet& resources,
                               const Triple& t, const EnergyConfig& config, Real scale,
                               EnergyGradients& grads);

struct TransRGradients {
  GradientTable entities;
  GradientTable relations;
  std::unordered_map<int, Matrix> projections;
};

void add_transr_energy_gradient(const EmbeddingSpace& space, const TransRParams& params,
                                const Triple& t, Norm norm, Real scale, TransRGradients& grads);

using TripleScorer = std::function<Real(const Triple&)>;

// The returned closures reference their arguments; keep them alive.
TripleScorer make_scorer(const EmbeddingSpace& space, const SemanticResourceSet& resources,
                         const EnergyConfig& config);
TripleScorer make_transr_scorer(const EmbeddingSpace& space, const TransRParams& params, Norm norm);

}  // namespace cskge
