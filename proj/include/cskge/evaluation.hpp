#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "cskge/energy.hpp"
#include "cskge/knowledge_graph.hpp"
#include "cskge/types.hpp"

namespace cskge {

enum class PredictionTask { Concept, Relation };

const char* task_name(PredictionTask t);

struct RankResult {
  Triple triple;
  Slot slot = Slot::Head;
  std::size_t raw_rank = 0;
  std::size_t filtered_rank = 0;
};

// Scores every candidate substituted into the slot (concepts for head/tail,
// relations for the relation slot). Rank is 1 + the number of other
// candidates scoring <= the target, so ties count against it. The filtered
// rank additionally skips candidates that form a known triple other than the
// target itself.
RankResult rank_slot(const Triple& t, Slot slot, const KnowledgeGraph& graph,
                     const TripleScorer& scorer);

struct LinkPredictionReport {
  PredictionTask task = PredictionTask::Concept;
  Real mean_rank_raw = 0;
  Real mean_rank_filtered = 0;
  Real hits10_raw = 0;       // percent
  Real hits10_filtered = 0;  // percent
  std::size_t n_test = 0;
  std::size_t n_rankings = 0;
  ScoreMode score_mode = ScoreMode::Total;
};

// Concept task ranks head and tail for every test triple; relation task ranks
// the relation slot. Empty test set is a domain error.
LinkPredictionReport eval_link_prediction(const std::vector<Triple>& test,
                                          const KnowledgeGraph& graph, const TripleScorer& scorer,
                                          PredictionTask task);

struct LabeledTriple {
  Triple triple;
  bool positive = false;
};

// Emits each golden triple followed by three negatives, one per position,
// each verified absent from the graph. Deterministic per seed.
std::vector<LabeledTriple> gen_classification_negatives(const std::vector<Triple>& golden,
                                                        const KnowledgeGraph& graph,
                                                        std::uint64_t seed);

struct RelationThreshold {
  Real threshold = 0;
  bool single_label = false;
  Real accuracy_valid = 0;
  std::size_t n_valid = 0;
};

struct ClassifierModel {
  std::unordered_map<int, RelationThreshold> thresholds;
  Real fallback_threshold = 0;
  Real accuracy_valid = 0;
};

// Chooses per-relation thresholds maximizing accuracy of "score < threshold
// => positive" on the validation set. Candidates are midpoints of adjacent
// distinct scores plus below-min/above-max sentinels; accuracy ties prefer
// the larger margin, then the smaller threshold. Relations with a single
// label get an accept-all/reject-all sentinel and a flag. The fallback
// threshold is fitted on all relations pooled.
ClassifierModel fit_thresholds(const std::vector<LabeledTriple>& valid,
                               const TripleScorer& scorer);

bool classify(const Triple& t, const ClassifierModel& model, const TripleScorer& scorer);

struct ClassificationReport {
  struct PerRelation {
    int rel = 0;
    Real accuracy = 0;
    std::size_t n = 0;
    Real threshold = 0;
    bool single_label = false;
  };

  Real accuracy = 0;
  std::size_t n = 0;
  std::vector<PerRelation> per_relation;
};

ClassificationReport eval_classification(const std::vector<LabeledTriple>& test,
                                         const ClassifierModel& model, const TripleScorer& scorer);

}  // namespace cskge
