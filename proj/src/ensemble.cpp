#include "syntqa/ensemble.hpp"

#include <algorithm>
#include <map>

#include "syntqa/errors.hpp"
#include "syntqa/features.hpp"
#include "syntqa/metrics.hpp"

namespace syntqa {

namespace {

SelectorDecision decide(const QAInstance& instance, const ModelPrediction& pred, double score,
                        std::string tag) {
  SelectorDecision decision;
  decision.instance_id = instance.id;
  decision.chosen_source = pred.source;
  decision.answers = pred.answers;
  decision.score = score;
  decision.rationale_tag = std::move(tag);
  return decision;
}

}  // namespace

SelectorDecision select_oracle(const QAInstance& instance, const ModelPrediction& sql_pred,
                               const ModelPrediction& e2e_pred) {
  bool sql_correct = exact_match(sql_pred.answers, instance.gold_answers);
  bool e2e_correct = exact_match(e2e_pred.answers, instance.gold_answers);
  if (sql_correct && e2e_correct) return decide(instance, sql_pred, 1.0, "both_correct");
  if (sql_correct) return decide(instance, sql_pred, 1.0, "sql_only");
  if (e2e_correct) return decide(instance, e2e_pred, 1.0, "e2e_only");
  return decide(instance, sql_pred, 0.0, "both_wrong");
}

SelectorDecision select_by_features(const SelectorModel& model, const QAInstance& instance,
                                    const TableData& table, const ModelPrediction& sql_pred,
                                    const ModelPrediction& e2e_pred, std::size_t budget) {
  if (answers_agree(sql_pred.answers, e2e_pred.answers)) {
    return decide(instance, sql_pred, 1.0, "agreement");
  }
  FeatureVector fv = extract_features(instance, table, sql_pred, e2e_pred, budget);
  Prediction prediction = model.predict(encode(fv));
  if (prediction.label == SelectionLabel::SqlCorrect) {
    return decide(instance, sql_pred, prediction.score, "classifier");
  }
  return decide(instance, e2e_pred, prediction.score, "classifier");
}

SelectorDecision select_by_confidence(const ModelPrediction& sql_pred,
                                      const ModelPrediction& e2e_pred) {
  double sql_conf = sql_pred.confidence();
  double e2e_conf = e2e_pred.confidence();
  SelectorDecision decision;
  decision.instance_id = sql_pred.instance_id;
  if (sql_conf >= e2e_conf) {
    decision.chosen_source = PredictionSource::Text2Sql;
    decision.answers = sql_pred.answers;
    decision.score = sql_conf;
  } else {
    decision.chosen_source = PredictionSource::E2E;
    decision.answers = e2e_pred.answers;
    decision.score = e2e_conf;
  }
  decision.rationale_tag = "confidence";
  return decision;
}

std::vector<std::string> vote_self_consistency(
    const std::vector<std::vector<std::string>>& candidates,
    const std::optional<std::vector<double>>& confidences) {
  if (candidates.empty()) {
    throw Error(ErrorKind::EmptyCandidates, "no candidate answers to vote over");
  }
  if (confidences && confidences->size() != candidates.size()) {
    throw Error(ErrorKind::InvalidSpec, "confidences do not pair with candidates");
  }

  struct Group {
    std::size_t count = 0;
    double confidence = 0.0;
    std::size_t first = 0;  // index of the first candidate in the group
  };
  std::map<std::string, Group> groups;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    std::string key = answer_list_key(candidates[i]);
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) it->second.first = i;
    it->second.count += 1;
    it->second.confidence += confidences ? (*confidences)[i] : 0.0;
  }

  // most frequent; then highest summed confidence; then smallest key
  // (std::map iterates keys in ascending order, so strict > suffices)
  const Group* best = nullptr;
  for (const auto& [key, group] : groups) {
    if (!best || group.count > best->count ||
        (group.count == best->count && group.confidence > best->confidence)) {
      best = &group;
    }
  }
  return candidates[best->first];
}

ModelPrediction vote_prediction(const ModelPrediction& pred) {
  if (!pred.candidates || pred.candidates->empty()) return pred;
  ModelPrediction voted = pred;
  voted.answers = vote_self_consistency(*pred.candidates, pred.candidate_confidences);
  return voted;
}

}  // namespace syntqa
