#include "syntqa/selector/model.hpp"

#include <cmath>

#include "syntqa/errors.hpp"

namespace syntqa {

std::string_view selection_label_name(SelectionLabel label) {
  return label == SelectionLabel::SqlCorrect ? "SQL_CORRECT" : "E2E_CORRECT";
}

SelectionLabel selection_label_from_name(std::string_view name) {
  if (name == "SQL_CORRECT") return SelectionLabel::SqlCorrect;
  if (name == "E2E_CORRECT") return SelectionLabel::E2eCorrect;
  throw Error(ErrorKind::InvalidRecord, "unknown selection label '" + std::string(name) + "'");
}

void TrainingSet::validate() const {
  if (vectors.empty()) {
    throw Error(ErrorKind::DegenerateData, "empty training set");
  }
  std::size_t d = vectors.front().size();
  for (const auto& v : vectors) {
    if (v.size() != d) {
      throw Error(ErrorKind::DimensionMismatch, "ragged training vectors");
    }
  }
  if (labels.size() != vectors.size()) {
    throw Error(ErrorKind::DimensionMismatch, "labels do not match vectors");
  }
  std::size_t n_sql = 0;
  for (auto label : labels) {
    if (label == SelectionLabel::SqlCorrect) ++n_sql;
  }
  std::size_t n_e2e = labels.size() - n_sql;
  if (n_sql < 2 || n_e2e < 2) {
    throw Error(ErrorKind::DegenerateData,
                "training needs at least two samples of each class (got " +
                    std::to_string(n_sql) + " sql, " + std::to_string(n_e2e) + " e2e)");
  }
}

void SelectorModel::check_dim(std::span<const double> vector) const {
  if (vector.size() != dim()) {
    throw Error(ErrorKind::DimensionMismatch,
                "vector has dimension " + std::to_string(vector.size()) + ", model expects " +
                    std::to_string(dim()));
  }
}

double SelectorModel::accuracy(const std::vector<std::vector<double>>& vectors,
                               const std::vector<SelectionLabel>& labels) const {
  if (vectors.empty()) return 0.0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (predict(vectors[i]).label == labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(vectors.size());
}

Standardizer Standardizer::fit(const std::vector<std::vector<double>>& vectors) {
  Standardizer s;
  if (vectors.empty()) return s;
  std::size_t d = vectors.front().size();
  s.mean.assign(d, 0.0);
  s.scale.assign(d, 1.0);
  for (const auto& v : vectors) {
    for (std::size_t j = 0; j < d; ++j) s.mean[j] += v[j];
  }
  for (std::size_t j = 0; j < d; ++j) s.mean[j] /= static_cast<double>(vectors.size());
  std::vector<double> var(d, 0.0);
  for (const auto& v : vectors) {
    for (std::size_t j = 0; j < d; ++j) {
      double diff = v[j] - s.mean[j];
      var[j] += diff * diff;
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    double sd = std::sqrt(var[j] / static_cast<double>(vectors.size()));
    s.scale[j] = sd > 0.0 ? sd : 1.0;
  }
  return s;
}

std::vector<double> Standardizer::apply(std::span<const double> vector) const {
  std::vector<double> out(vector.size());
  for (std::size_t j = 0; j < vector.size(); ++j) {
    out[j] = (vector[j] - mean[j]) / scale[j];
  }
  return out;
}

}  // namespace syntqa
