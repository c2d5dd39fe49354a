#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace syntqa {

enum class SelectionLabel { SqlCorrect = 0, E2eCorrect = 1 };

std::string_view selection_label_name(SelectionLabel label);
SelectionLabel selection_label_from_name(std::string_view name);

/// Encoded feature vectors with exclusive-disagreement labels.
struct TrainingSet {
  std::vector<std::vector<double>> vectors;
  std::vector<SelectionLabel> labels;
  std::vector<std::string> instance_ids;

  std::size_t size() const { return vectors.size(); }
  std::size_t dim() const { return vectors.empty() ? 0 : vectors.front().size(); }

  /// Rejects empty sets, ragged vectors, and classes with fewer than two
  /// samples.
  void validate() const;
};

struct Prediction {
  SelectionLabel label = SelectionLabel::SqlCorrect;
  double score = 0.0;  ///< probability-like support for SqlCorrect
};

class SelectorModel {
 public:
  virtual ~SelectorModel() = default;

  virtual std::string_view kind() const = 0;
  virtual std::size_t dim() const = 0;

  /// Score >= 0.5 selects SqlCorrect (ties go to the SQL side).
  virtual Prediction predict(std::span<const double> vector) const = 0;

  double accuracy(const std::vector<std::vector<double>>& vectors,
                  const std::vector<SelectionLabel>& labels) const;

 protected:
  void check_dim(std::span<const double> vector) const;
};

/// Feature standardization fit on training data; zero-variance features pass
/// through unscaled.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> scale;

  static Standardizer fit(const std::vector<std::vector<double>>& vectors);
  std::vector<double> apply(std::span<const double> vector) const;
};

}  // namespace syntqa
