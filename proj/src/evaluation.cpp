#include "cskge/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "cskge/error.hpp"
#include "cskge/sampling.hpp"

namespace cskge {

const char* task_name(PredictionTask t) {
  return t == PredictionTask::Concept ? "concept" : "relation";
}

RankResult rank_slot(const Triple& t, Slot slot, const KnowledgeGraph& graph,
                     const TripleScorer& scorer) {
  graph.check_ids(t);
  const int n = slot == Slot::Relation ? graph.relations().size() : graph.concepts().size();
  const Real target_score = scorer(t);

  RankResult result;
  result.triple = t;
  result.slot = slot;
  std::size_t raw = 1, filtered = 1;
  for (int c = 0; c < n; ++c) {
    Triple candidate = t;
    switch (slot) {
      case Slot::Head: candidate.head = c; break;
      case Slot::Tail: candidate.tail = c; break;
      case Slot::Relation: candidate.rel = c; break;
    }
    if (candidate == t) continue;
    if (scorer(candidate) > target_score) continue;
    ++raw;
    if (!graph.contains(candidate)) ++filtered;
  }
  result.raw_rank = raw;
  result.filtered_rank = filtered;
  return result;
}

LinkPredictionReport eval_link_prediction(const std::vector<Triple>& test,
                                          const KnowledgeGraph& graph, const TripleScorer& scorer,
                                          PredictionTask task) {
  if (test.empty())
    throw_error(ErrorCategory::Domain, "link prediction needs a non-empty test set");

  LinkPredictionReport report;
  report.task = task;
  report.n_test = test.size();

  std::size_t sum_raw = 0, sum_filtered = 0, hits_raw = 0, hits_filtered = 0, n = 0;
  auto absorb = [&](const RankResult& r) {
    sum_raw += r.raw_rank;
    sum_filtered += r.filtered_rank;
    hits_raw += r.raw_rank <= 10;
    hits_filtered += r.filtered_rank <= 10;
    ++n;
  };
  for (const Triple& t : test) {
    if (task == PredictionTask::Concept) {
      absorb(rank_slot(t, Slot::Head, graph, scorer));
      absorb(rank_slot(t, Slot::Tail, graph, scorer));
    } else {
      absorb(rank_slot(t, Slot::Relation, graph, scorer));
    }
  }
  report.n_rankings = n;
  report.mean_rank_raw = static_cast<Real>(sum_raw) / static_cast<Real>(n);
  report.mean_rank_filtered = static_cast<Real>(sum_filtered) / static_cast<Real>(n);
  report.hits10_raw = 100.0 * static_cast<Real>(hits_raw) / static_cast<Real>(n);
  report.hits10_filtered = 100.0 * static_cast<Real>(hits_filtered) / static_cast<Real>(n);
  return report;
}

std::vector<LabeledTriple> gen_classification_negatives(const std::vector<Triple>& golden,
                                                        const KnowledgeGraph& graph,
                                                        std::uint64_t seed) {
  Rng rng(seed);
  std::vector<LabeledTriple> out;
  out.reserve(golden.size() * 4);
  for (const Triple& t : golden) {
    out.push_back(LabeledTriple{t, true});
    for (Slot slot : {Slot::Head, Slot::Tail, Slot::Relation}) {
      auto corrupted = corrupt_at(t, graph, slot, rng);
      if (!corrupted)
        throw_error(ErrorCategory::Domain,
                    std::string("cannot corrupt ") + slot_name(slot) + " of triple (" +
                        std::to_string(t.head) + "," + std::to_string(t.rel) + "," +
                        std::to_string(t.tail) + "): every candidate is a known triple");
      out.push_back(LabeledTriple{*corrupted, false});
    }
  }
  return out;
}

namespace {

struct GroupFit {
  Real threshold = 0;
  Real accuracy = 0;
  bool single_label = false;
};

// Exhaustive threshold scan for one group of scored examples under the rule
// "score < threshold => positive".
GroupFit fit_group(std::vector<std::pair<Real, bool>> scored) {
  const std::size_t n = scored.size();
  std::sort(scored.begin(), scored.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t total_pos = 0;
  for (const auto& [s, pos] : scored) total_pos += pos;
  const std::size_t total_neg = n - total_pos;

  GroupFit fit;
  fit.single_label = total_pos == 0 || total_neg == 0;

  // Cut c classifies the first c examples positive. Candidate cuts sit at
  // distinct-score boundaries plus the two ends.
  Real best_accuracy = -1, best_margin = 0, best_threshold = 0;
  auto consider = [&](std::size_t cut, Real threshold, Real margin, std::size_t pos_below) {
    const std::size_t neg_above = total_neg - (cut - pos_below);
    const Real accuracy = static_cast<Real>(pos_below + neg_above) / static_cast<Real>(n);
    if (accuracy > best_accuracy + 1e-15 ||
        (std::abs(accuracy - best_accuracy) <= 1e-15 &&
         (margin > best_margin + 1e-15 ||
          (std::abs(margin - best_margin) <= 1e-15 && threshold < best_threshold)))) {
      best_accuracy = accuracy;
      best_margin = margin;
      best_threshold = threshold;
    }
  };

  const Real inf = std::numeric_limits<Real>::infinity();
  std::size_t pos_below = 0;
  consider(0, scored.front().first - 1, inf, 0);
  for (std::size_t i = 0; i < n; ++i) {
    pos_below += scored[i].second;
    if (i + 1 < n && scored[i + 1].first > scored[i].first)
      consider(i + 1, (scored[i].first + scored[i + 1].first) / 2,
               (scored[i + 1].first - scored[i].first) / 2, pos_below);
  }
  consider(n, scored.back().first + 1, inf, pos_below);

  fit.threshold = best_threshold;
  fit.accuracy = best_accuracy;
  return fit;
}

}  // namespace

ClassifierModel fit_thresholds(const std::vector<LabeledTriple>& valid,
                               const TripleScorer& scorer) {
  if (valid.empty()) throw_error(ErrorCategory::Domain, "threshold fitting needs labeled triples");

  std::map<int, std::vector<std::pair<Real, bool>>> by_relation;
  std::vector<std::pair<Real, bool>> pooled;
  pooled.reserve(valid.size());
  for (const auto& lt : valid) {
    Real s = scorer(lt.triple);
    by_relation[lt.triple.rel].push_back({s, lt.positive});
    pooled.push_back({s, lt.positive});
  }

  bool any_mixed = false;
  ClassifierModel model;
  for (auto& [rel, scored] : by_relation) {
    GroupFit fit = fit_group(scored);
    any_mixed = any_mixed || !fit.single_label;
    model.thresholds[rel] =
        RelationThreshold{fit.threshold, fit.single_label, fit.accuracy, scored.size()};
  }
  if (!any_mixed)
    throw_error(ErrorCategory::Domain,
                "threshold fitting needs both labels for at least one relation");

  model.fallback_threshold = fit_group(pooled).threshold;

  std::size_t correct = 0;
  for (const auto& lt : valid) {
    Real s = scorer(lt.triple);
    bool predicted = s < model.thresholds.at(lt.triple.rel).threshold;
    correct += predicted == lt.positive;
  }
  model.accuracy_valid = static_cast<Real>(correct) / static_cast<Real>(valid.size());
  return model;
}

bool classify(const Triple& t, const ClassifierModel& model, const TripleScorer& scorer) {
  auto it = model.thresholds.find(t.rel);
  Real threshold = it != model.thresholds.end() ? it->second.threshold : model.fallback_threshold;
  return scorer(t) < threshold;
}

ClassificationReport eval_classification(const std::vector<LabeledTriple>& test,
                                         const ClassifierModel& model,
                                         const TripleScorer& scorer) {
  if (test.empty()) throw_error(ErrorCategory::Domain, "classification needs a non-empty test set");

  struct Tally {
    std::size_t correct = 0;
    std::size_t n = 0;
  };
  std::map<int, Tally> by_relation;
  std::size_t correct = 0;
  for (const auto& lt : test) {
    bool predicted = classify(lt.triple, model, scorer);
    bool ok = predicted == lt.positive;
    correct += ok;
    auto& tally = by_relation[lt.triple.rel];
    tally.correct += ok;
    ++tally.n;
  }

  ClassificationReport report;
  report.n = test.size();
  report.accuracy = static_cast<Real>(correct) / static_cast<Real>(test.size());
  for (const auto& [rel, tally] : by_relation) {
    ClassificationReport::PerRelation pr;
    pr.rel = rel;
    pr.accuracy = static_cast<Real>(tally.correct) / static_cast<Real>(tally.n);
    pr.n = tally.n;
    auto it = model.thresholds.find(rel);
    pr.threshold = it != model.thresholds.end() ? it->second.threshold : model.fallback_threshold;
    pr.single_label = it != model.thresholds.end() && it->second.single_label;
    report.per_relation.push_back(pr);
  }
  return report;
}

}  // namespace cskge
