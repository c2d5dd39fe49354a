#include "syntqa/selector/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "syntqa/errors.hpp"

namespace syntqa {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

std::unique_ptr<LogisticModel> train_logistic(const TrainingSet& data, LogisticHyperparams hp) {
  data.validate();
  std::size_t n = data.size();
  std::size_t d = data.dim();

  Standardizer standardizer = Standardizer::fit(data.vectors);
  std::vector<std::vector<double>> x(n);
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = standardizer.apply(data.vectors[i]);
    y[i] = data.labels[i] == SelectionLabel::SqlCorrect ? 1.0 : 0.0;
  }

  std::vector<double> w(d, 0.0);
  double b = 0.0;
  bool converged = false;
  for (int iter = 0; iter < hp.max_iters; ++iter) {
    std::vector<double> grad_w(d, 0.0);
    double grad_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double z = b;
      for (std::size_t j = 0; j < d; ++j) z += w[j] * x[i][j];
      double err = sigmoid(z) - y[i];
      for (std::size_t j = 0; j < d; ++j) grad_w[j] += err * x[i][j];
      grad_b += err;
    }
    double inv_n = 1.0 / static_cast<double>(n);
    double max_grad = std::fabs(grad_b * inv_n);
    for (std::size_t j = 0; j < d; ++j) {
      grad_w[j] = grad_w[j] * inv_n + hp.l2 * w[j];
      max_grad = std::max(max_grad, std::fabs(grad_w[j]));
    }
    grad_b *= inv_n;
    if (max_grad < hp.tolerance) {
      converged = true;
      break;
    }
    for (std::size_t j = 0; j < d; ++j) w[j] -= hp.learning_rate * grad_w[j];
    b -= hp.learning_rate * grad_b;
  }
  if (!converged) {
    throw Error(ErrorKind::NonConvergence,
                "gradient norm above tolerance after " + std::to_string(hp.max_iters) +
                    " iterations");
  }
  return std::make_unique<LogisticModel>(std::move(standardizer), std::move(w), b, hp);
}

Prediction LogisticModel::predict(std::span<const double> vector) const {
  check_dim(vector);
  std::vector<double> x = standardizer_.apply(vector);
  double z = bias_;
  for (std::size_t j = 0; j < x.size(); ++j) z += weights_[j] * x[j];
  double p = sigmoid(z);
  SelectionLabel label = p >= 0.5 ? SelectionLabel::SqlCorrect : SelectionLabel::E2eCorrect;
  return {label, p};
}

std::unique_ptr<KnnModel> train_knn(const TrainingSet& data, KnnHyperparams hp) {
  data.validate();
  if (hp.k < 1 || static_cast<std::size_t>(hp.k) > data.size()) {
    throw Error(ErrorKind::DegenerateData,
                "k must lie in [1, n]; got k=" + std::to_string(hp.k) + " with n=" +
                    std::to_string(data.size()));
  }
  Standardizer standardizer = Standardizer::fit(data.vectors);
  std::vector<std::vector<double>> standardized(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    standardized[i] = standardizer.apply(data.vectors[i]);
  }
  return std::make_unique<KnnModel>(std::move(standardizer), std::move(standardized),
                                    data.labels, hp);
}

Prediction KnnModel::predict(std::span<const double> vector) const {
  check_dim(vector);
  std::vector<double> x = standardizer_.apply(vector);
  std::vector<std::pair<double, std::size_t>> distances(vectors_.size());
  for (std::size_t i = 0; i < vectors_.size(); ++i) {
    double d2 = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      double diff = vectors_[i][j] - x[j];
      d2 += diff * diff;
    }
    distances[i] = {d2, i};
  }
  std::size_t k = static_cast<std::size_t>(hp_.k);
  std::partial_sort(distances.begin(), distances.begin() + static_cast<std::ptrdiff_t>(k),
                    distances.end());
  std::size_t sql_votes = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (labels_[distances[i].second] == SelectionLabel::SqlCorrect) ++sql_votes;
  }
  double score = static_cast<double>(sql_votes) / static_cast<double>(k);
  SelectionLabel label =
      score >= 0.5 ? SelectionLabel::SqlCorrect : SelectionLabel::E2eCorrect;
  return {label, score};
}

}  // namespace syntqa
