#include "cskge/retrofit.hpp"

#include <unordered_set>

#include "cskge/error.hpp"

namespace cskge {

namespace {

struct PairHash {
  std::size_t operator()(const std::pair<int, int>& p) const noexcept {
    return std::hash<std::uint64_t>{}(
        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.first)) << 32) |
        static_cast<std::uint32_t>(p.second));
  }
};

}  // namespace

RetrofitResult retrofit(const VectorTable& table, const KnowledgeGraph& graph, Real alpha,
                        Real beta, int iterations) {
  if (alpha < 0 || beta < 0)
    throw_error(ErrorCategory::Config, "retrofit weights must be non-negative");
  if (iterations < 1) throw_error(ErrorCategory::Config, "retrofit needs at least one iteration");

  const int n = table.size();
  const Index d = table.dim();

  // Concept id -> table row for keys present in the graph.
  std::vector<int> concept_row(static_cast<std::size_t>(graph.concepts().size()), -1);
  for (int i = 0; i < n; ++i)
    if (auto id = graph.concepts().find(table.key(i))) concept_row[static_cast<std::size_t>(*id)] = i;

  std::unordered_set<std::pair<int, int>, PairHash> edges;
  std::vector<std::vector<int>> adjacency(static_cast<std::size_t>(n));
  for (const auto* split : {&graph.train(), &graph.valid(), &graph.test()}) {
    for (const Triple& t : *split) {
      int a = concept_row[static_cast<std::size_t>(t.head)];
      int b = concept_row[static_cast<std::size_t>(t.tail)];
      if (a < 0 || b < 0 || a == b) continue;
      if (!edges.insert({std::min(a, b), std::max(a, b)}).second) continue;
      adjacency[static_cast<std::size_t>(a)].push_back(b);
      adjacency[static_cast<std::size_t>(b)].push_back(a);
    }
  }

  std::vector<Real> inv_deg(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i)
    if (!adjacency[static_cast<std::size_t>(i)].empty())
      inv_deg[static_cast<std::size_t>(i)] = 1.0 / static_cast<Real>(adjacency[static_cast<std::size_t>(i)].size());

  auto pair_weight = [&](int i, int j) {
    return beta * (inv_deg[static_cast<std::size_t>(i)] + inv_deg[static_cast<std::size_t>(j)]) / 2;
  };

  for (int i = 0; i < n; ++i) {
    if (adjacency[static_cast<std::size_t>(i)].empty()) continue;
    Real denom = alpha;
    for (int j : adjacency[static_cast<std::size_t>(i)]) denom += pair_weight(i, j);
    if (denom <= 0)
      throw_error(ErrorCategory::Domain,
                  "degenerate retrofit weights for key '" + table.key(i) + "'");
  }

  const Matrix original = table.vectors();
  Matrix w = original;

  auto objective = [&] {
    Real f = alpha * (w - original).squaredNorm();
    for (const auto& [a, b] : edges) f += pair_weight(a, b) * (w.row(a) - w.row(b)).squaredNorm();
    return f;
  };

  RetrofitResult result;
  result.objective.reserve(static_cast<std::size_t>(iterations) + 1);
  result.objective.push_back(objective());

  RowVector acc(d);
  for (int iter = 0; iter < iterations; ++iter) {
    for (int i = 0; i < n; ++i) {
      const auto& nbrs = adjacency[static_cast<std::size_t>(i)];
      if (nbrs.empty()) continue;
      acc = alpha * original.row(i);
      Real denom = alpha;
      for (int j : nbrs) {
        const Real b = pair_weight(i, j);
        acc += b * w.row(j);
        denom += b;
      }
      w.row(i) = acc / denom;
    }
    result.objective.push_back(objective());
  }

  result.vectors = d > 0 ? VectorTable(d) : VectorTable();
  for (int i = 0; i < n; ++i) result.vectors.insert(table.key(i), w.row(i));
  return result;
}

}  // namespace cskge
