#pragma once

#include "syntqa/selector/model.hpp"

namespace syntqa {

struct ForestHyperparams {
  int n_trees = 100;
  int max_depth = -1;  ///< unlimited when negative
  int min_leaf = 1;
  int n_threads = 0;   ///< 0 = hardware concurrency; results are thread-count invariant
};

struct TreeNode {
  int feature = -1;  ///< -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  // class counts of the node's training samples (sql, e2e)
  std::int64_t n_sql = 0;
  std::int64_t n_e2e = 0;
};

struct DecisionTree {
  std::vector<TreeNode> nodes;

  const TreeNode& leaf_for(std::span<const double> vector) const;
};

/// Bagged Gini-split trees over a random sqrt(d) feature subset per node;
/// every tree derives its random stream from (seed, tree index), so training
/// is deterministic regardless of thread count.
class ForestModel : public SelectorModel {
 public:
  ForestModel() = default;
  ForestModel(std::vector<DecisionTree> trees, ForestHyperparams hp, std::uint64_t seed,
              std::size_t dim)
      : trees_(std::move(trees)), hp_(hp), seed_(seed), dim_(dim) {}

  std::string_view kind() const override { return "rf"; }
  std::size_t dim() const override { return dim_; }
  Prediction predict(std::span<const double> vector) const override;

  const std::vector<DecisionTree>& trees() const { return trees_; }
  const ForestHyperparams& hyperparams() const { return hp_; }
  std::uint64_t seed() const { return seed_; }

 private:
  std::vector<DecisionTree> trees_;
  ForestHyperparams hp_;
  std::uint64_t seed_ = 0;
  std::size_t dim_ = 0;
};

std::unique_ptr<ForestModel> train_forest(const TrainingSet& data, ForestHyperparams hp,
                                          std::uint64_t seed);

/// Gini impurity of a (sql, e2e) count pair.
double gini_impurity(std::int64_t n_sql, std::int64_t n_e2e);

}  // namespace syntqa
