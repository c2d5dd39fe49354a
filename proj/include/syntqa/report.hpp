#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "syntqa/ensemble.hpp"
#include "syntqa/instance.hpp"
#include "syntqa/table.hpp"

namespace syntqa {

struct QuadrantCounts {
  std::size_t both_correct = 0;
  std::size_t sql_only = 0;
  std::size_t e2e_only = 0;
  std::size_t both_wrong = 0;

  std::size_t total() const { return both_correct + sql_only + e2e_only + both_wrong; }
};

struct BucketRow {
  std::string label;
  std::size_t lo = 0;
  std::size_t hi = 0;  ///< inclusive; SIZE_MAX for the open bucket
  std::size_t n = 0;
  double sql_accuracy = 0.0;
  double e2e_accuracy = 0.0;
  double accuracy = 0.0;  ///< decision stream; NaN when no decisions given
};

struct RobustnessRow {
  std::size_t n = 0;
  double pre_accuracy = 0.0;
  double post_accuracy = 0.0;
  /// post-correct among pre-correct
  double r_acc_ratio = 0.0;
  /// post answer equals pre answer
  double r_acc_consistency = 0.0;
};

struct EvalReport {
  std::size_t n = 0;
  double accuracy = 0.0;  ///< decision stream; NaN when no decisions given
  double oracle_accuracy = 0.0;
  double sql_accuracy = 0.0;
  double e2e_accuracy = 0.0;
  QuadrantCounts quadrants;
  std::vector<BucketRow> buckets;
  std::optional<std::map<std::string, RobustnessRow>> per_perturbation;
};

/// Default row-count bucket edges: 1-10, 11-20, 21-30, 31-50, 51+.
std::vector<std::pair<std::size_t, std::size_t>> default_row_buckets();

/// Scores individual predictions (always) and the decision stream (when
/// given) against gold. Every instance needs both predictions, and decisions
/// must pair one-to-one with instances.
EvalReport evaluate(const std::vector<QAInstance>& instances,
                    const std::map<std::string, TableData>& tables,
                    const std::map<std::string, const ModelPrediction*>& sql_preds,
                    const std::map<std::string, const ModelPrediction*>& e2e_preds,
                    const std::vector<SelectorDecision>* decisions = nullptr);

/// Pre/post pairs aligned by instance id, grouped by the post instance's
/// perturbation tag; an "all" row aggregates every pair. Both robustness
/// variants are reported.
std::map<std::string, RobustnessRow> robustness_report(
    const std::vector<QAInstance>& pre_instances,
    const std::vector<SelectorDecision>& pre_decisions,
    const std::vector<QAInstance>& post_instances,
    const std::vector<SelectorDecision>& post_decisions);

}  // namespace syntqa
