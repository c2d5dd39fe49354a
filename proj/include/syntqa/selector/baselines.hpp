#pragma once

#include "syntqa/selector/model.hpp"

namespace syntqa {

struct LogisticHyperparams {
  double learning_rate = 0.5;
  int max_iters = 10000;
  double tolerance = 1e-3;  ///< on the gradient infinity norm
  double l2 = 1e-2;         ///< keeps the optimum finite on separable data
};

/// Ridge-regularized logistic regression fit by full-batch gradient descent
/// on standardized features. Raises NonConvergence when the gradient norm
/// stays above tolerance.
class LogisticModel : public SelectorModel {
 public:
  LogisticModel() = default;
  LogisticModel(Standardizer standardizer, std::vector<double> weights, double bias,
                LogisticHyperparams hp)
      : standardizer_(std::move(standardizer)), weights_(std::move(weights)), bias_(bias),
        hp_(hp) {}

  std::string_view kind() const override { return "lr"; }
  std::size_t dim() const override { return weights_.size(); }
  Prediction predict(std::span<const double> vector) const override;

  const Standardizer& standardizer() const { return standardizer_; }
  const std::vector<double>& weights() const { return weights_; }
  double bias() const { return bias_; }
  const LogisticHyperparams& hyperparams() const { return hp_; }

 private:
  Standardizer standardizer_;
  std::vector<double> weights_;
  double bias_ = 0.0;
  LogisticHyperparams hp_;
};

std::unique_ptr<LogisticModel> train_logistic(const TrainingSet& data, LogisticHyperparams hp);

struct KnnHyperparams {
  int k = 5;
};

/// Standardized Euclidean k-nearest-neighbors with majority vote; distance
/// ties at the k boundary break to the earlier training row, vote ties to
/// SqlCorrect.
class KnnModel : public SelectorModel {
 public:
  KnnModel() = default;
  KnnModel(Standardizer standardizer, std::vector<std::vector<double>> vectors,
           std::vector<SelectionLabel> labels, KnnHyperparams hp)
      : standardizer_(std::move(standardizer)), vectors_(std::move(vectors)),
        labels_(std::move(labels)), hp_(hp) {}

  std::string_view kind() const override { return "knn"; }
  std::size_t dim() const override { return vectors_.empty() ? 0 : vectors_.front().size(); }
  Prediction predict(std::span<const double> vector) const override;

  const Standardizer& standardizer() const { return standardizer_; }
  const std::vector<std::vector<double>>& vectors() const { return vectors_; }
  const std::vector<SelectionLabel>& labels() const { return labels_; }
  const KnnHyperparams& hyperparams() const { return hp_; }

 private:
  Standardizer standardizer_;
  std::vector<std::vector<double>> vectors_;  // standardized
  std::vector<SelectionLabel> labels_;
  KnnHyperparams hp_;
};

std::unique_ptr<KnnModel> train_knn(const TrainingSet& data, KnnHyperparams hp);

}  // namespace syntqa
