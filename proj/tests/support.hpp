#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "cskge/knowledge_graph.hpp"
#include "cskge/rng.hpp"
#include "cskge/types.hpp"

namespace testsupport {

// Scratch directory under the system temp root, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<unsigned> counter{0};
    auto base = std::filesystem::temp_directory_path();
    path_ = base / ("cskge_test_" + std::to_string(::getpid()) + "_" +
                    std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path file(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::filesystem::path write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
  return p;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

// Random graph with dense ids and distinct triples; handy for property checks.
inline cskge::KnowledgeGraph random_graph(int n_concepts, int n_relations, int n_triples,
                                          unsigned seed) {
  cskge::Vocabulary concepts, relations;
  for (int i = 0; i < n_concepts; ++i) concepts.add("c" + std::to_string(i));
  for (int i = 0; i < n_relations; ++i) relations.add("r" + std::to_string(i));
  std::mt19937 gen(seed);
  cskge::TripleSet seen;
  std::vector<cskge::Triple> pool;
  while (static_cast<int>(pool.size()) < n_triples) {
    cskge::Triple t;
    t.head = static_cast<int>(gen() % static_cast<unsigned>(n_concepts));
    t.tail = static_cast<int>(gen() % static_cast<unsigned>(n_concepts));
    t.rel = static_cast<int>(gen() % static_cast<unsigned>(n_relations));
    if (seen.insert(t).second) pool.push_back(t);
  }
  return cskge::KnowledgeGraph::make(std::move(concepts), std::move(relations), std::move(pool),
                                     {}, {});
}

// Graph whose triples are the global lowest-energy (h, r, t) combinations of
// a hidden translation model, so a TransE-style learner can fit it.
struct PlantedModel {
  cskge::KnowledgeGraph pool;
  cskge::Matrix latent_concepts;
  cskge::Matrix latent_relations;
};

inline PlantedModel planted_graph(int n_concepts, int n_relations, int n_triples, int latent_dim,
                                  std::uint64_t seed, cskge::Real relation_scale = 0.5) {
  using namespace cskge;
  Rng rng(seed);
  Matrix concepts(n_concepts, latent_dim), relations(n_relations, latent_dim);
  for (int i = 0; i < n_concepts; ++i) {
    for (int j = 0; j < latent_dim; ++j) concepts(i, j) = rng.normal();
    concepts.row(i).normalize();
  }
  for (int i = 0; i < n_relations; ++i)
    for (int j = 0; j < latent_dim; ++j)
      relations(i, j) = rng.normal() * relation_scale / std::sqrt(static_cast<Real>(latent_dim));

  struct Scored {
    Real energy;
    Triple triple;
  };
  std::vector<Scored> all;
  all.reserve(static_cast<std::size_t>(n_concepts) * static_cast<std::size_t>(n_concepts) *
              static_cast<std::size_t>(n_relations));
  for (int h = 0; h < n_concepts; ++h)
    for (int r = 0; r < n_relations; ++r)
      for (int t = 0; t < n_concepts; ++t) {
        if (h == t) continue;
        Real e = (concepts.row(h) + relations.row(r) - concepts.row(t)).norm();
        all.push_back({e, Triple{h, r, t}});
      }
  std::sort(all.begin(), all.end(), [](const Scored& a, const Scored& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    if (a.triple.head != b.triple.head) return a.triple.head < b.triple.head;
    if (a.triple.rel != b.triple.rel) return a.triple.rel < b.triple.rel;
    return a.triple.tail < b.triple.tail;
  });

  Vocabulary cv, rv;
  for (int i = 0; i < n_concepts; ++i) cv.add("c" + std::to_string(i));
  for (int i = 0; i < n_relations; ++i) rv.add("r" + std::to_string(i));
  std::vector<Triple> pool;
  for (int i = 0; i < n_triples && i < static_cast<int>(all.size()); ++i)
    pool.push_back(all[static_cast<std::size_t>(i)].triple);

  PlantedModel model;
  model.pool = KnowledgeGraph::make(std::move(cv), std::move(rv), std::move(pool), {}, {});
  model.latent_concepts = std::move(concepts);
  model.latent_relations = std::move(relations);
  return model;
}

}  // namespace testsupport
