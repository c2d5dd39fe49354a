#include "syntqa/selector/forest.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "syntqa/errors.hpp"
#include "syntqa/rng.hpp"

namespace syntqa {

double gini_impurity(std::int64_t n_sql, std::int64_t n_e2e) {
  std::int64_t n = n_sql + n_e2e;
  if (n == 0) return 0.0;
  double p = static_cast<double>(n_sql) / static_cast<double>(n);
  double q = static_cast<double>(n_e2e) / static_cast<double>(n);
  return 1.0 - p * p - q * q;
}

const TreeNode& DecisionTree::leaf_for(std::span<const double> vector) const {
  int idx = 0;
  while (nodes[idx].feature >= 0) {
    const TreeNode& node = nodes[idx];
    idx = vector[static_cast<std::size_t>(node.feature)] <= node.threshold ? node.left
                                                                           : node.right;
  }
  return nodes[idx];
}

namespace {

struct Split {
  bool found = false;
  int feature = -1;
  double threshold = 0.0;
  double impurity = 0.0;
};

class TreeBuilder {
 public:
  TreeBuilder(const TrainingSet& data, const ForestHyperparams& hp, Rng rng)
      : data_(data), hp_(hp), rng_(rng) {}

  DecisionTree build() {
    std::size_t n = data_.size();
    std::vector<std::size_t> sample(n);
    for (std::size_t i = 0; i < n; ++i) {
      sample[i] = static_cast<std::size_t>(rng_.bounded(n));
    }
    tree_.nodes.clear();
    grow(std::move(sample), 0);
    return std::move(tree_);
  }

 private:
  int grow(std::vector<std::size_t> sample, int depth) {
    int index = static_cast<int>(tree_.nodes.size());
    tree_.nodes.emplace_back();
    std::int64_t n_sql = 0;
    for (std::size_t i : sample) {
      if (data_.labels[i] == SelectionLabel::SqlCorrect) ++n_sql;
    }
    TreeNode& node = tree_.nodes.back();
    node.n_sql = n_sql;
    node.n_e2e = static_cast<std::int64_t>(sample.size()) - n_sql;

    bool pure = node.n_sql == 0 || node.n_e2e == 0;
    bool too_small = sample.size() < 2 * static_cast<std::size_t>(hp_.min_leaf) ||
                     sample.size() < 2;
    bool too_deep = hp_.max_depth >= 0 && depth >= hp_.max_depth;
    if (pure || too_small || too_deep) return index;

    Split split = best_split(sample);
    if (!split.found) return index;

    std::vector<std::size_t> left, right;
    for (std::size_t i : sample) {
      if (data_.vectors[i][static_cast<std::size_t>(split.feature)] <= split.threshold) {
        left.push_back(i);
      } else {
        right.push_back(i);
      }
    }
    if (left.size() < static_cast<std::size_t>(hp_.min_leaf) ||
        right.size() < static_cast<std::size_t>(hp_.min_leaf)) {
      return index;
    }
    sample.clear();
    sample.shrink_to_fit();

    int left_index = grow(std::move(left), depth + 1);
    int right_index = grow(std::move(right), depth + 1);
    TreeNode& filled = tree_.nodes[static_cast<std::size_t>(index)];
    filled.feature = split.feature;
    filled.threshold = split.threshold;
    filled.left = left_index;
    filled.right = right_index;
    return index;
  }

  Split best_split(const std::vector<std::size_t>& sample) {
    std::size_t d = data_.dim();
    std::size_t n_features = static_cast<std::size_t>(
        std::max(1.0, std::floor(std::sqrt(static_cast<double>(d)))));

    // partial Fisher-Yates draw of feature indices without replacement
    std::vector<int> features(d);
    for (std::size_t j = 0; j < d; ++j) features[j] = static_cast<int>(j);
    for (std::size_t j = 0; j < n_features; ++j) {
      std::size_t k = j + static_cast<std::size_t>(rng_.bounded(d - j));
      std::swap(features[j], features[k]);
    }
    features.resize(n_features);

    Split best;
    std::vector<std::pair<double, SelectionLabel>> column(sample.size());
    for (int feature : features) {
      for (std::size_t i = 0; i < sample.size(); ++i) {
        column[i] = {data_.vectors[sample[i]][static_cast<std::size_t>(feature)],
                     data_.labels[sample[i]]};
      }
      std::sort(column.begin(), column.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });

      std::int64_t total_sql = 0;
      for (const auto& [value, label] : column) {
        if (label == SelectionLabel::SqlCorrect) ++total_sql;
      }
      std::int64_t total = static_cast<std::int64_t>(column.size());
      std::int64_t left_sql = 0, left_n = 0;
      for (std::size_t i = 0; i + 1 < column.size(); ++i) {
        if (column[i].second == SelectionLabel::SqlCorrect) ++left_sql;
        ++left_n;
        if (column[i].first == column[i + 1].first) continue;
        double threshold = column[i].first + 0.5 * (column[i + 1].first - column[i].first);
        std::int64_t right_n = total - left_n;
        std::int64_t right_sql = total_sql - left_sql;
        double weighted =
            (static_cast<double>(left_n) * gini_impurity(left_sql, left_n - left_sql) +
             static_cast<double>(right_n) * gini_impurity(right_sql, right_n - right_sql)) /
            static_cast<double>(total);
        if (!best.found || weighted < best.impurity) {
          best.found = true;
          best.feature = feature;
          best.threshold = threshold;
          best.impurity = weighted;
        }
      }
    }
    return best;
  }

  const TrainingSet& data_;
  const ForestHyperparams& hp_;
  Rng rng_;
  DecisionTree tree_;
};

}  // namespace

std::unique_ptr<ForestModel> train_forest(const TrainingSet& data, ForestHyperparams hp,
                                          std::uint64_t seed) {
  data.validate();
  if (hp.n_trees < 1) {
    throw Error(ErrorKind::InvalidSpec, "n_trees must be positive");
  }
  std::vector<DecisionTree> trees(static_cast<std::size_t>(hp.n_trees));

  unsigned n_threads = hp.n_threads > 0 ? static_cast<unsigned>(hp.n_threads)
                                        : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(hp.n_trees));

  std::atomic<std::size_t> next_tree{0};
  auto worker = [&] {
    while (true) {
      std::size_t t = next_tree.fetch_add(1);
      if (t >= trees.size()) break;
      TreeBuilder builder(data, hp, Rng(mix_seed(seed, t)));
      trees[t] = builder.build();
    }
  };
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return std::make_unique<ForestModel>(std::move(trees), hp, seed, data.dim());
}

Prediction ForestModel::predict(std::span<const double> vector) const {
  check_dim(vector);
  std::size_t sql_votes = 0;
  for (const auto& tree : trees_) {
    const TreeNode& leaf = tree.leaf_for(vector);
    // majority class of the leaf; ties vote SQL
    if (leaf.n_sql >= leaf.n_e2e) ++sql_votes;
  }
  double score = static_cast<double>(sql_votes) / static_cast<double>(trees_.size());
  SelectionLabel label =
      score >= 0.5 ? SelectionLabel::SqlCorrect : SelectionLabel::E2eCorrect;
  return {label, score};
}

}  // namespace syntqa
