#include "syntqa/annotation.hpp"

#include <algorithm>
#include <cmath>

#include "syntqa/ensemble.hpp"
#include "syntqa/errors.hpp"
#include "syntqa/features.hpp"
#include "syntqa/metrics.hpp"
#include "syntqa/rng.hpp"

namespace syntqa {

std::vector<AnnotationPoint> annotation_curve(
    const std::vector<QAInstance>& instances, const std::map<std::string, TableData>& tables,
    const std::map<std::string, const ModelPrediction*>& sql_preds,
    const std::map<std::string, const ModelPrediction*>& e2e_preds,
    const std::vector<double>& fractions, std::uint64_t seed,
    const AnnotationCurveConfig& config) {
  if (!std::is_sorted(fractions.begin(), fractions.end())) {
    throw Error(ErrorKind::InvalidSpec, "fractions must be sorted ascending");
  }
  for (double p : fractions) {
    if (p < 0.0 || p > 1.0) {
      throw Error(ErrorKind::InvalidSpec, "fractions must lie in [0, 1]");
    }
  }

  auto lookup = [&](const std::map<std::string, const ModelPrediction*>& preds,
                    const std::string& id) -> const ModelPrediction& {
    auto it = preds.find(id);
    if (it == preds.end()) {
      throw Error(ErrorKind::MissingPrediction, "no prediction for instance '" + id + "'");
    }
    return *it->second;
  };
  auto table_for = [&](const QAInstance& inst) -> const TableData& {
    auto it = tables.find(inst.table_id);
    if (it == tables.end()) {
      throw Error(ErrorKind::UnknownTable, "unknown table '" + inst.table_id + "'");
    }
    return it->second;
  };

  // one shuffle; growing prefixes model a growing annotation budget
  std::vector<std::size_t> order(instances.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(mix_seed(seed, 0xA110));
  rng.shuffle(order);

  std::vector<AnnotationPoint> points;
  for (double p : fractions) {
    std::size_t k = static_cast<std::size_t>(
        std::llround(p * static_cast<double>(instances.size())));
    k = std::min(k, instances.size());
    std::vector<bool> annotated(instances.size(), false);
    for (std::size_t i = 0; i < k; ++i) annotated[order[i]] = true;

    // train on the annotated exclusive-disagreement pool
    TrainingSet pool;
    bool any_disagreement = false;
    for (std::size_t i = 0; i < instances.size(); ++i) {
      if (!annotated[i]) continue;
      const QAInstance& inst = instances[i];
      const ModelPrediction& sql_pred = lookup(sql_preds, inst.id);
      const ModelPrediction& e2e_pred = lookup(e2e_preds, inst.id);
      if (answers_agree(sql_pred.answers, e2e_pred.answers)) continue;
      any_disagreement = true;
      bool sql_ok = exact_match(sql_pred.answers, inst.gold_answers);
      bool e2e_ok = exact_match(e2e_pred.answers, inst.gold_answers);
      if (sql_ok == e2e_ok) continue;  // both wrong carries no selection label
      pool.vectors.push_back(
          encode(extract_features(inst, table_for(inst), sql_pred, e2e_pred, config.budget)));
      pool.labels.push_back(sql_ok ? SelectionLabel::SqlCorrect : SelectionLabel::E2eCorrect);
      pool.instance_ids.push_back(inst.id);
    }

    std::unique_ptr<ForestModel> model;
    if (any_disagreement) {
      model = train_forest(pool, config.forest, seed);
    }

    std::size_t correct = 0;
    for (std::size_t i = 0; i < instances.size(); ++i) {
      const QAInstance& inst = instances[i];
      const ModelPrediction& sql_pred = lookup(sql_preds, inst.id);
      const ModelPrediction& e2e_pred = lookup(e2e_preds, inst.id);
      std::vector<std::string> answers;
      if (!annotated[i]) {
        answers = e2e_pred.answers;  // no SQL annotation, no SQL candidate
      } else if (answers_agree(sql_pred.answers, e2e_pred.answers)) {
        answers = sql_pred.answers;
      } else {
        SelectorDecision decision = select_by_features(*model, inst, table_for(inst), sql_pred,
                                                       e2e_pred, config.budget);
        answers = decision.answers;
      }
      if (exact_match(answers, inst.gold_answers)) ++correct;
    }
    points.push_back(
        {p, static_cast<double>(correct) / static_cast<double>(instances.size())});
  }
  return points;
}

}  // namespace syntqa
