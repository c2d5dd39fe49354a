#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "syntqa/instance.hpp"
#include "syntqa/selector/forest.hpp"
#include "syntqa/table.hpp"

namespace syntqa {

struct AnnotationPoint {
  double fraction = 0.0;
  double accuracy = 0.0;
};

struct AnnotationCurveConfig {
  ForestHyperparams forest;
  std::size_t budget = kDefaultLinearizeBudget;
};

/// Accuracy as a function of the SQL-annotation budget. For each fraction p
/// (sorted ascending), the first round(p*n) instances of one seeded shuffle
/// count as SQL-annotated: they go through the retrained feature selector,
/// the rest are forced to the E2E answer. p=0 therefore equals pure E2E
/// accuracy and p=1 the full ensemble. The selector trains on the annotated
/// exclusive-disagreement pool with the given seed; too small a pool raises
/// DegenerateData.
std::vector<AnnotationPoint> annotation_curve(
    const std::vector<QAInstance>& instances, const std::map<std::string, TableData>& tables,
    const std::map<std::string, const ModelPrediction*>& sql_preds,
    const std::map<std::string, const ModelPrediction*>& e2e_preds,
    const std::vector<double>& fractions, std::uint64_t seed,
    const AnnotationCurveConfig& config = {});

}  // namespace syntqa
