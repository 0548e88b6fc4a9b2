#pragma once

#include <vector>

#include "cskge/knowledge_graph.hpp"
#include "cskge/types.hpp"
#include "cskge/vector_table.hpp"

namespace cskge {

struct RetrofitResult {
  VectorTable vectors;
  // Objective before the first sweep, then one value per iteration.
  std::vector<Real> objective;
};

// Pulls each key's vector toward its original value (weight alpha) and toward
// the vectors of its graph neighbors. Keys i and j are neighbors when both are
// table keys and some triple connects their labels, in either direction and
// under any relation. Each unordered pair gets the symmetric weight
// beta * (1/deg(i) + 1/deg(j)) / 2, so every sweep is an exact coordinate
// minimization of
//   alpha * sum_i ||w_i - w0_i||^2 + sum_(i,j) b_ij ||w_i - w_j||^2
// and the objective never increases. Keys without neighbors stay unchanged.
RetrofitResult retrofit(const VectorTable& table, const KnowledgeGraph& graph, Real alpha,
                        Real beta, int iterations);

}  // namespace cskge
