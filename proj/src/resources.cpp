#include "cskge/resources.hpp"

#include "cskge/error.hpp"

namespace cskge {

const char* class_tag(SemanticClass c) {
  switch (c) {
    case SemanticClass::Text: return "txt";
    case SemanticClass::Affect: return "aff";
    case SemanticClass::CommonKnowledge: return "ck";
  }
  return "?";
}

std::optional<SemanticClass> parse_class_tag(std::string_view tag) {
  for (SemanticClass c : kAllClasses)
    if (tag == class_tag(c)) return c;
  return std::nullopt;
}

int ClassSet::count() const {
  int n = 0;
  for (SemanticClass c : kAllClasses)
    if (contains(c)) ++n;
  return n;
}

SemanticResourceSet SemanticResourceSet::bind(
    const KnowledgeGraph& graph, const std::array<const VectorTable*, kNumClasses>& tables) {
  SemanticResourceSet set;
  const int n = graph.concepts().size();
  for (SemanticClass c : kAllClasses) {
    const VectorTable* table = tables[idx(c)];
    if (!table) continue;
    if (table->dim() <= 0)
      throw_error(ErrorCategory::Config,
                  std::string("semantic class '") + class_tag(c) + "' has no dimension");
    Matrix m = Matrix::Zero(n, table->dim());
    std::vector<std::uint8_t> cov(static_cast<std::size_t>(n), 0);
    for (int id = 0; id < n; ++id) {
      if (auto row = table->find(graph.concepts().label(id))) {
        m.row(id) = table->row(*row);
        cov[static_cast<std::size_t>(id)] = 1;
      }
    }
    set.set_class(c, std::move(m), std::move(cov));
  }
  return set;
}

void SemanticResourceSet::set_class(SemanticClass c, Matrix vectors,
                                    std::vector<std::uint8_t> coverage) {
  if (vectors.rows() != static_cast<Index>(coverage.size()))
    throw_error(ErrorCategory::Domain, "coverage length does not match vector rows");
  if (vectors.cols() <= 0)
    throw_error(ErrorCategory::Domain, "semantic vectors must have positive dimension");
  if (concept_count_ >= 0 && vectors.rows() != concept_count_)
    throw_error(ErrorCategory::Config, "semantic classes cover different concept counts");
  if (dim_ > 0 && vectors.cols() != dim_)
    throw_error(ErrorCategory::Config,
                "semantic classes have mismatched dimensions: " + std::to_string(dim_) + " vs " +
                    std::to_string(vectors.cols()));
  concept_count_ = static_cast<int>(vectors.rows());
  dim_ = vectors.cols();
  auto& slot = data_[idx(c)];
  slot.vectors = std::move(vectors);
  slot.coverage = std::move(coverage);
  slot.present = true;
}

ClassSet SemanticResourceSet::classes() const {
  ClassSet s;
  for (SemanticClass c : kAllClasses)
    if (has(c)) s.insert(c);
  return s;
}

void SemanticResourceSet::require(SemanticClass c) const {
  if (!has(c))
    throw_error(ErrorCategory::Domain,
                std::string("semantic class '") + class_tag(c) + "' is not loaded");
}

bool SemanticResourceSet::covered(SemanticClass c, int concept_id) const {
  require(c);
  const auto& cov = data_[idx(c)].coverage;
  if (concept_id < 0 || static_cast<std::size_t>(concept_id) >= cov.size())
    throw_error(ErrorCategory::Domain, "concept id out of range: " + std::to_string(concept_id));
  return cov[static_cast<std::size_t>(concept_id)] != 0;
}

int SemanticResourceSet::coverage_count(SemanticClass c) const {
  require(c);
  int n = 0;
  for (auto f : data_[idx(c)].coverage) n += f != 0;
  return n;
}

const Matrix& SemanticResourceSet::vectors(SemanticClass c) const {
  require(c);
  return data_[idx(c)].vectors;
}

Matrix& SemanticResourceSet::mutable_vectors(SemanticClass c) {
  require(c);
  return data_[idx(c)].vectors;
}

const std::vector<std::uint8_t>& SemanticResourceSet::coverage(SemanticClass c) const {
  require(c);
  return data_[idx(c)].coverage;
}

RestrictResult restrict_to_covered(const KnowledgeGraph& graph,
                                   const SemanticResourceSet& resources) {
  ClassSet present = resources.classes();
  if (present.empty()) return RestrictResult{graph, resources};

  const int n = graph.concepts().size();
  std::vector<int> concept_map(static_cast<std::size_t>(n), -1);
  Vocabulary concepts;
  for (int id = 0; id < n; ++id) {
    bool keep = true;
    for (SemanticClass c : kAllClasses)
      if (present.contains(c) && !resources.covered(c, id)) keep = false;
    if (keep) concept_map[static_cast<std::size_t>(id)] = concepts.add(graph.concepts().label(id));
  }

  auto survives = [&](const Triple& t) {
    return concept_map[static_cast<std::size_t>(t.head)] >= 0 &&
           concept_map[static_cast<std::size_t>(t.tail)] >= 0;
  };

  std::vector<int> relation_map(static_cast<std::size_t>(graph.relations().size()), -1);
  Vocabulary relations;
  for (const auto* split : {&graph.train(), &graph.valid(), &graph.test()})
    for (const Triple& t : *split)
      if (survives(t) && relation_map[static_cast<std::size_t>(t.rel)] < 0)
        relation_map[static_cast<std::size_t>(t.rel)] = -2;
  for (int r = 0; r < graph.relations().size(); ++r)
    if (relation_map[static_cast<std::size_t>(r)] == -2)
      relation_map[static_cast<std::size_t>(r)] = relations.add(graph.relations().label(r));

  auto remap_split = [&](const std::vector<Triple>& in) {
    std::vector<Triple> out;
    for (const Triple& t : in) {
      if (!survives(t)) continue;
      out.push_back(Triple{concept_map[static_cast<std::size_t>(t.head)],
                           relation_map[static_cast<std::size_t>(t.rel)],
                           concept_map[static_cast<std::size_t>(t.tail)]});
    }
    return out;
  };
  std::vector<Triple> train = remap_split(graph.train());
  std::vector<Triple> valid = remap_split(graph.valid());
  std::vector<Triple> test = remap_split(graph.test());

  if (train.empty() && valid.empty() && test.empty()) {
    std::string msg = "no triples survive coverage restriction; coverage:";
    for (SemanticClass c : kAllClasses)
      if (present.contains(c))
        msg += std::string(" ") + class_tag(c) + "=" + std::to_string(resources.coverage_count(c)) +
               "/" + std::to_string(n);
    throw_error(ErrorCategory::Coverage, msg);
  }

  RestrictResult result;
  result.graph = KnowledgeGraph::make(std::move(concepts), std::move(relations), std::move(train),
                                      std::move(valid), std::move(test));

  const int kept = result.graph.concepts().size();
  for (SemanticClass c : kAllClasses) {
    if (!present.contains(c)) continue;
    Matrix m(kept, resources.dim());
    std::vector<std::uint8_t> cov(static_cast<std::size_t>(kept), 0);
    for (int id = 0; id < n; ++id) {
      int nid = concept_map[static_cast<std::size_t>(id)];
      if (nid < 0) continue;
      m.row(nid) = resources.vectors(c).row(id);
      cov[static_cast<std::size_t>(nid)] = resources.coverage(c)[static_cast<std::size_t>(id)];
    }
    result.resources.set_class(c, std::move(m), std::move(cov));
  }
  return result;
}

}  // namespace cskge
