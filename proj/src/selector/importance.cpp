#include "syntqa/selector/importance.hpp"

#include <algorithm>

#include "syntqa/errors.hpp"
#include "syntqa/rng.hpp"

namespace syntqa {

std::vector<FeatureImportance> permutation_importance(
    const SelectorModel& model, const std::vector<std::vector<double>>& vectors,
    const std::vector<SelectionLabel>& labels, int n_repeats, std::uint64_t seed) {
  if (vectors.empty() || n_repeats < 1) {
    throw Error(ErrorKind::InvalidSpec, "importance needs data and at least one repeat");
  }
  double baseline = model.accuracy(vectors, labels);
  std::size_t d = model.dim();
  std::vector<FeatureImportance> result(d);

  std::vector<std::vector<double>> scratch = vectors;
  for (std::size_t feature = 0; feature < d; ++feature) {
    double total_drop = 0.0;
    for (int rep = 0; rep < n_repeats; ++rep) {
      Rng rng(mix_seed(seed, feature * 1000003ull + static_cast<std::uint64_t>(rep)));
      std::vector<double> column(vectors.size());
      for (std::size_t i = 0; i < vectors.size(); ++i) column[i] = vectors[i][feature];
      rng.shuffle(column);
      for (std::size_t i = 0; i < vectors.size(); ++i) scratch[i][feature] = column[i];
      total_drop += baseline - model.accuracy(scratch, labels);
    }
    for (std::size_t i = 0; i < vectors.size(); ++i) scratch[i][feature] = vectors[i][feature];
    result[feature] = {feature, total_drop / n_repeats};
  }
  std::stable_sort(result.begin(), result.end(), [](const auto& a, const auto& b) {
    return a.importance > b.importance;
  });
  return result;
}

}  // namespace syntqa
