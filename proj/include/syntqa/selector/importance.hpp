#pragma once

#include <cstdint>
#include <vector>

#include "syntqa/selector/model.hpp"

namespace syntqa {

struct FeatureImportance {
  std::size_t feature = 0;
  double importance = 0.0;  ///< mean accuracy drop under permutation
};

/// Permutation importance on an evaluation set: per feature, the accuracy
/// drop when that column is shuffled, averaged over `n_repeats` seeded
/// shuffles. Returned sorted by decreasing importance (feature index breaks
/// ties).
std::vector<FeatureImportance> permutation_importance(
    const SelectorModel& model, const std::vector<std::vector<double>>& vectors,
    const std::vector<SelectionLabel>& labels, int n_repeats, std::uint64_t seed);

}  // namespace syntqa
