#include "cskge/knowledge_graph.hpp"

#include <fstream>

#include "cskge/error.hpp"
#include "cskge/rng.hpp"
#include "cskge/util.hpp"

namespace cskge {

int Vocabulary::add(const std::string& label) {
  auto it = index_.find(label);
  if (it != index_.end()) return it->second;
  int id = size();
  labels_.push_back(label);
  index_.emplace(labels_.back(), id);
  return id;
}

std::optional<int> Vocabulary::find(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const std::string& Vocabulary::label(int id) const {
  if (!valid(id)) throw_error(ErrorCategory::Domain, "vocabulary id out of range: " + std::to_string(id));
  return labels_[static_cast<std::size_t>(id)];
}

std::uint64_t Vocabulary::content_hash() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const auto& l : labels_) {
    h = fnv1a(l, h);
    h = fnv1a("\n", h);
  }
  return h;
}

KnowledgeGraph KnowledgeGraph::make(Vocabulary concepts, Vocabulary relations,
                                    std::vector<Triple> train, std::vector<Triple> valid,
                                    std::vector<Triple> test) {
  KnowledgeGraph g;
  g.concepts_ = std::move(concepts);
  g.relations_ = std::move(relations);
  g.train_ = std::move(train);
  g.valid_ = std::move(valid);
  g.test_ = std::move(test);
  std::size_t total = g.train_.size() + g.valid_.size() + g.test_.size();
  g.all_.reserve(total);
  for (const auto* split : {&g.train_, &g.valid_, &g.test_}) {
    for (const Triple& t : *split) {
      g.check_ids(t);
      if (!g.all_.insert(t).second)
        throw_error(ErrorCategory::Domain, "duplicate triple across or within splits");
    }
  }
  return g;
}

void KnowledgeGraph::check_ids(const Triple& t) const {
  if (!concepts_.valid(t.head) || !concepts_.valid(t.tail) || !relations_.valid(t.rel))
    throw_error(ErrorCategory::Domain,
                "triple id out of range: (" + std::to_string(t.head) + "," +
                    std::to_string(t.rel) + "," + std::to_string(t.tail) + ")");
}

bool KnowledgeGraph::contains(const Triple& t) const {
  check_ids(t);
  return all_.contains(t);
}

KnowledgeGraph load_triples(const std::filesystem::path& path, bool allow_empty) {
  std::ifstream in(path);
  if (!in) throw_error(ErrorCategory::Io, "cannot open triple file: " + path.string());

  Vocabulary concepts, relations;
  std::vector<Triple> pool;
  TripleSet seen;

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv = trim(line);
    if (sv.empty() || sv.front() == '#') continue;
    auto fields = split_on(sv, '\t');
    if (fields.size() != 3)
      throw_parse(path.string(), lineno,
                  "expected 3 tab-separated fields, got " + std::to_string(fields.size()));
    std::string head = normalize_label(fields[0]);
    std::string rel = normalize_label(fields[1]);
    std::string tail = normalize_label(fields[2]);
    if (head.empty() || rel.empty() || tail.empty())
      throw_parse(path.string(), lineno, "empty field");
    Triple t;
    t.head = concepts.add(head);
    t.rel = relations.add(rel);
    t.tail = concepts.add(tail);
    if (seen.insert(t).second) pool.push_back(t);
  }
  if (pool.empty() && !allow_empty)
    throw_error(ErrorCategory::Parse, "no triples in file: " + path.string());

  return KnowledgeGraph::make(std::move(concepts), std::move(relations), std::move(pool), {}, {});
}

KnowledgeGraph split_per_relation(const KnowledgeGraph& pool, const SplitRatios& ratios,
                                  std::uint64_t seed, SplitStats* stats) {
  if (!(ratios.train > 0 && ratios.valid > 0 && ratios.test > 0))
    throw_error(ErrorCategory::Config, "split ratios must be positive");
  if (std::abs(ratios.train + ratios.valid + ratios.test - 1.0) > 1e-9)
    throw_error(ErrorCategory::Config, "split ratios must sum to 1");

  const int n_rel = pool.relations().size();
  std::vector<std::vector<Triple>> by_relation(static_cast<std::size_t>(n_rel));
  for (const auto* split : {&pool.train(), &pool.valid(), &pool.test()})
    for (const Triple& t : *split) by_relation[static_cast<std::size_t>(t.rel)].push_back(t);

  Rng rng(seed);
  std::vector<Triple> train, valid, test;
  for (int r = 0; r < n_rel; ++r) {
    auto& triples = by_relation[static_cast<std::size_t>(r)];
    const int n = static_cast<int>(triples.size());
    RelationSplitCounts counts;
    counts.rel = r;
    counts.total = n;
    if (n < 3) {
      if (stats)
        stats->warnings.push_back("relation '" + pool.relations().label(r) + "' has only " +
                                  std::to_string(n) + " triples; all assigned to train");
      train.insert(train.end(), triples.begin(), triples.end());
      counts.train = n;
    } else {
      rng.shuffle(triples);
      const int n_valid = static_cast<int>(std::floor(n * ratios.valid));
      const int n_test = static_cast<int>(std::floor(n * ratios.test));
      const int n_train = n - n_valid - n_test;  // floor remainders stay in train
      for (int i = 0; i < n; ++i) {
        if (i < n_train)
          train.push_back(triples[static_cast<std::size_t>(i)]);
        else if (i < n_train + n_valid)
          valid.push_back(triples[static_cast<std::size_t>(i)]);
        else
          test.push_back(triples[static_cast<std::size_t>(i)]);
      }
      counts.train = n_train;
      counts.valid = n_valid;
      counts.test = n_test;
    }
    if (stats) stats->per_relation.push_back(counts);
  }

  Vocabulary concepts = pool.concepts();
  Vocabulary relations = pool.relations();
  return KnowledgeGraph::make(std::move(concepts), std::move(relations), std::move(train),
                              std::move(valid), std::move(test));
}

void save_triples(const std::filesystem::path& path, const KnowledgeGraph& g,
                  const std::vector<Triple>& triples) {
  std::ofstream out(path);
  if (!out) throw_error(ErrorCategory::Io, "cannot write triple file: " + path.string());
  for (const Triple& t : triples)
    out << g.concepts().label(t.head) << '\t' << g.relations().label(t.rel) << '\t'
        << g.concepts().label(t.tail) << '\n';
  if (!out) throw_error(ErrorCategory::Io, "write failed: " + path.string());
}

std::uint64_t triples_checksum(const KnowledgeGraph& g, const std::vector<Triple>& triples) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const Triple& t : triples) {
    h = fnv1a(g.concepts().label(t.head), h);
    h = fnv1a("\t", h);
    h = fnv1a(g.relations().label(t.rel), h);
    h = fnv1a("\t", h);
    h = fnv1a(g.concepts().label(t.tail), h);
    h = fnv1a("\n", h);
  }
  return h;
}

}  // namespace cskge
