#pragma once

#include "syntqa/features.hpp"
#include "syntqa/fixture.hpp"
#include "syntqa/metrics.hpp"
#include "syntqa/selector/model.hpp"

namespace syntqa::testing {

/// Quadrant proportions matching the published WTQ test row.
inline FixtureSpec wtq_spec(std::size_t n, std::uint64_t seed) {
  FixtureSpec spec;
  spec.n = n;
  spec.both_correct = 0.498;
  spec.sql_only = 0.149;
  spec.e2e_only = 0.128;
  spec.both_wrong = 0.225;
  spec.signal = 1.0;
  spec.signal_kind = SignalKind::Both;
  spec.seed = seed;
  return spec;
}

/// Exclusive-disagreement training pool over a whole fixture.
inline TrainingSet disagreement_pool(const Fixture& fixture,
                                     std::size_t budget = kDefaultLinearizeBudget) {
  auto sql_index = index_predictions(fixture.sql_preds);
  auto e2e_index = index_predictions(fixture.e2e_preds);
  TrainingSet pool;
  for (const auto& inst : fixture.instances) {
    const ModelPrediction& sql_pred = *sql_index.at(inst.id);
    const ModelPrediction& e2e_pred = *e2e_index.at(inst.id);
    if (answers_agree(sql_pred.answers, e2e_pred.answers)) continue;
    bool sql_ok = exact_match(sql_pred.answers, inst.gold_answers);
    bool e2e_ok = exact_match(e2e_pred.answers, inst.gold_answers);
    if (sql_ok == e2e_ok) continue;
    pool.vectors.push_back(encode(
        extract_features(inst, fixture.tables.at(inst.table_id), sql_pred, e2e_pred, budget)));
    pool.labels.push_back(sql_ok ? SelectionLabel::SqlCorrect : SelectionLabel::E2eCorrect);
    pool.instance_ids.push_back(inst.id);
  }
  return pool;
}

}  // namespace syntqa::testing
