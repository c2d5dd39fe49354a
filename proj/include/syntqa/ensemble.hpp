#pragma once

#include <optional>
#include <string>
#include <vector>

#include "syntqa/instance.hpp"
#include "syntqa/selector/model.hpp"
#include "syntqa/table.hpp"

namespace syntqa {

/// The selected answer is always one of the two candidates, verbatim.
struct SelectorDecision {
  std::string instance_id;
  PredictionSource chosen_source = PredictionSource::Text2Sql;
  std::vector<std::string> answers;
  double score = 0.0;
  std::string rationale_tag;
};

/// Picks any correct candidate (SQL preferred on double-correct); falls back
/// to SQL with tag "both_wrong" when neither matches gold.
SelectorDecision select_oracle(const QAInstance& instance, const ModelPrediction& sql_pred,
                               const ModelPrediction& e2e_pred);

/// Agreement short-circuits without touching the classifier; disagreements
/// are scored by the trained model.
SelectorDecision select_by_features(const SelectorModel& model, const QAInstance& instance,
                                    const TableData& table, const ModelPrediction& sql_pred,
                                    const ModelPrediction& e2e_pred,
                                    std::size_t budget = kDefaultLinearizeBudget);

/// Higher length-normalized confidence wins; ties go to the SQL side.
SelectorDecision select_by_confidence(const ModelPrediction& sql_pred,
                                      const ModelPrediction& e2e_pred);

/// Maximum voting over candidate answer lists; ties break by summed
/// confidence, then by lexicographically smallest normalized form. Returns
/// the first-occurring candidate of the winning class.
std::vector<std::string> vote_self_consistency(
    const std::vector<std::vector<std::string>>& candidates,
    const std::optional<std::vector<double>>& confidences = std::nullopt);

/// Applies self-consistency voting to a prediction's candidate lists,
/// replacing its answers; predictions without candidates pass through.
ModelPrediction vote_prediction(const ModelPrediction& pred);

}  // namespace syntqa
