#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "syntqa/errors.hpp"
#include "syntqa/rng.hpp"
#include "syntqa/selector/baselines.hpp"
#include "syntqa/selector/forest.hpp"
#include "syntqa/selector/importance.hpp"
#include "syntqa/selector/model_io.hpp"

using namespace syntqa;
namespace fs = std::filesystem;

namespace {

// linearly separable with a margin: label = Sql iff x0 + x1 > 1
TrainingSet separable_set(std::size_t n, std::uint64_t seed) {
  TrainingSet data;
  Rng rng(seed);
  while (data.size() < n) {
    double x0 = rng.uniform(0.0, 2.0);
    double x1 = rng.uniform(0.0, 2.0);
    if (std::abs(x0 + x1 - 1.0) < 0.2) continue;
    data.vectors.push_back({x0, x1});
    data.labels.push_back(x0 + x1 > 1.0 ? SelectionLabel::SqlCorrect
                                        : SelectionLabel::E2eCorrect);
    data.instance_ids.push_back("p" + std::to_string(data.size()));
  }
  return data;
}

TrainingSet single_class_set() {
  TrainingSet data;
  for (int i = 0; i < 10; ++i) {
    data.vectors.push_back({static_cast<double>(i)});
    data.labels.push_back(SelectionLabel::SqlCorrect);
    data.instance_ids.push_back("s" + std::to_string(i));
  }
  return data;
}

}  // namespace

TEST_CASE("forest fits a separable set") {
  TrainingSet train = separable_set(200, 7);
  auto model = train_forest(train, {}, 42);
  CHECK(model->accuracy(train.vectors, train.labels) == 1.0);

  TrainingSet held_out = separable_set(200, 8);
  CHECK(model->accuracy(held_out.vectors, held_out.labels) >= 0.95);
}

TEST_CASE("single-class input is degenerate") {
  TrainingSet data = single_class_set();
  try {
    train_forest(data, {}, 1);
    FAIL("expected DegenerateData");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateData);
  }
}

TEST_CASE("training is deterministic per seed, regardless of thread count") {
  TrainingSet train = separable_set(120, 3);
  ForestHyperparams hp;
  hp.n_trees = 20;
  hp.n_threads = 1;
  auto a = train_forest(train, hp, 99);
  hp.n_threads = 4;
  auto b = train_forest(train, hp, 99);
  CHECK(serialize_model(*a) == serialize_model(*b));

  auto c = train_forest(train, hp, 100);
  CHECK(serialize_model(*a) != serialize_model(*c));
}

TEST_CASE("prediction score is the sql vote fraction; ties go to sql") {
  TrainingSet train = separable_set(100, 5);
  auto model = train_forest(train, {}, 11);
  auto p = model->predict(std::vector<double>{1.8, 1.8});
  CHECK(p.label == SelectionLabel::SqlCorrect);
  CHECK(p.score > 0.5);
  auto q = model->predict(std::vector<double>{0.1, 0.1});
  CHECK(q.label == SelectionLabel::E2eCorrect);
  CHECK(q.score < 0.5);

  SUBCASE("dimension mismatch is rejected") {
    CHECK_THROWS_AS(model->predict(std::vector<double>{1.0}), Error);
  }
}

TEST_CASE("an exact half-split vote ties to sql") {
  // two single-leaf trees voting opposite ways -> score exactly 0.5
  DecisionTree sql_tree, e2e_tree;
  sql_tree.nodes.push_back(TreeNode{-1, 0.0, -1, -1, 3, 1});
  e2e_tree.nodes.push_back(TreeNode{-1, 0.0, -1, -1, 1, 3});
  ForestModel model({sql_tree, e2e_tree}, {}, 0, 2);
  auto p = model.predict(std::vector<double>{0.0, 0.0});
  CHECK(p.score == 0.5);
  CHECK(p.label == SelectionLabel::SqlCorrect);
}

TEST_CASE("training points in a pure-leaf forest keep their labels") {
  TrainingSet train = separable_set(60, 13);
  auto model = train_forest(train, {}, 21);
  std::size_t agree = 0;
  for (std::size_t i = 0; i < train.size(); ++i) {
    if (model->predict(train.vectors[i]).label == train.labels[i]) ++agree;
  }
  CHECK(agree == train.size());
}

TEST_CASE("split thresholds stay within the feature range and lower impurity") {
  TrainingSet train = separable_set(150, 17);
  auto model = train_forest(train, {}, 33);
  double min_v[2] = {1e9, 1e9}, max_v[2] = {-1e9, -1e9};
  for (const auto& v : train.vectors) {
    for (int j = 0; j < 2; ++j) {
      min_v[j] = std::min(min_v[j], v[j]);
      max_v[j] = std::max(max_v[j], v[j]);
    }
  }
  for (const auto& tree : model->trees()) {
    for (const auto& node : tree.nodes) {
      if (node.feature < 0) continue;
      CHECK(node.threshold >= min_v[node.feature]);
      CHECK(node.threshold <= max_v[node.feature]);
      const auto& left = tree.nodes[static_cast<std::size_t>(node.left)];
      const auto& right = tree.nodes[static_cast<std::size_t>(node.right)];
      double parent = gini_impurity(node.n_sql, node.n_e2e);
      double child =
          (static_cast<double>(left.n_sql + left.n_e2e) * gini_impurity(left.n_sql, left.n_e2e) +
           static_cast<double>(right.n_sql + right.n_e2e) *
               gini_impurity(right.n_sql, right.n_e2e)) /
          static_cast<double>(node.n_sql + node.n_e2e);
      CHECK(child <= parent + 1e-12);
    }
  }
}

TEST_CASE("more trees do not increase score variance across seeds") {
  TrainingSet train = separable_set(80, 23);
  std::vector<std::vector<double>> probes;
  Rng rng(29);
  for (int i = 0; i < 40; ++i) probes.push_back({rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0)});

  auto mean_variance = [&](int n_trees) {
    std::vector<std::vector<double>> scores(probes.size());
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      ForestHyperparams hp;
      hp.n_trees = n_trees;
      auto model = train_forest(train, hp, seed);
      for (std::size_t i = 0; i < probes.size(); ++i) {
        scores[i].push_back(model->predict(probes[i]).score);
      }
    }
    double total = 0.0;
    for (const auto& s : scores) {
      double mean = 0.0;
      for (double v : s) mean += v;
      mean /= s.size();
      double var = 0.0;
      for (double v : s) var += (v - mean) * (v - mean);
      total += var / s.size();
    }
    return total / static_cast<double>(probes.size());
  };
  CHECK(mean_variance(60) <= mean_variance(5) + 0.01);
}

TEST_CASE("logistic regression fits the separable set") {
  TrainingSet train = separable_set(200, 31);
  auto model = train_logistic(train, {});
  CHECK(model->accuracy(train.vectors, train.labels) >= 0.95);
  TrainingSet held_out = separable_set(200, 32);
  CHECK(model->accuracy(held_out.vectors, held_out.labels) >= 0.95);

  SUBCASE("degenerate data rejected") {
    CHECK_THROWS_AS(train_logistic(single_class_set(), {}), Error);
  }
  SUBCASE("non-convergence is reported") {
    LogisticHyperparams hp;
    hp.max_iters = 1;
    hp.tolerance = 1e-12;
    try {
      train_logistic(train, hp);
      FAIL("expected NonConvergence");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NonConvergence);
    }
  }
}

TEST_CASE("knn behaves as expected") {
  TrainingSet train = separable_set(100, 41);
  KnnHyperparams hp;
  hp.k = 1;
  auto model = train_knn(train, hp);
  // k=1 reproduces its own training set
  CHECK(model->accuracy(train.vectors, train.labels) == 1.0);

  KnnHyperparams hp5;
  hp5.k = 5;
  auto model5 = train_knn(train, hp5);
  TrainingSet held_out = separable_set(100, 42);
  CHECK(model5->accuracy(held_out.vectors, held_out.labels) >= 0.95);

  SUBCASE("k beyond n is degenerate") {
    KnnHyperparams big;
    big.k = 1000;
    CHECK_THROWS_AS(train_knn(train, big), Error);
  }
}

TEST_CASE("model save/load round-trips predictions byte-for-byte") {
  TrainingSet train = separable_set(150, 51);
  fs::path dir = fs::temp_directory_path() / "syntqa_models";
  fs::create_directories(dir);

  auto check_roundtrip = [&](const SelectorModel& model, const char* name) {
    fs::path file = dir / name;
    save_model(model, file);
    auto loaded = load_model(file);
    CHECK(loaded->kind() == model.kind());
    Rng rng(61);
    for (int i = 0; i < 100; ++i) {
      std::vector<double> v = {rng.uniform(0.0, 2.0), rng.uniform(0.0, 2.0)};
      auto a = model.predict(v);
      auto b = loaded->predict(v);
      CHECK(a.label == b.label);
      CHECK(a.score == b.score);
    }
    // serialized form is stable
    CHECK(serialize_model(*loaded) == serialize_model(model));
  };

  check_roundtrip(*train_forest(train, {}, 71), "forest.json");
  check_roundtrip(*train_logistic(train, {}), "logistic.json");
  KnnHyperparams hp;
  hp.k = 3;
  check_roundtrip(*train_knn(train, hp), "knn.json");
}

TEST_CASE("same seed twice gives byte-identical model files") {
  TrainingSet train = separable_set(150, 81);
  fs::path dir = fs::temp_directory_path() / "syntqa_models";
  fs::create_directories(dir);
  save_model(*train_forest(train, {}, 5), dir / "a.json");
  save_model(*train_forest(train, {}, 5), dir / "b.json");
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };
  CHECK(slurp(dir / "a.json") == slurp(dir / "b.json"));
}

TEST_CASE("version and format tags are enforced") {
  CHECK_THROWS_AS(deserialize_model("not json"), Error);
  CHECK_THROWS_AS(deserialize_model("{\"format\":\"other\"}"), Error);
  try {
    deserialize_model("{\"format\":\"syntqa-model\",\"version\":99,\"kind\":\"rf\"}");
    FAIL("expected VersionMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::VersionMismatch);
  }
}

TEST_CASE("permutation importance ranks the informative confidence features first") {
  // only slots 14 (sql confidence) and 19 (e2e confidence) carry label signal
  TrainingSet data;
  Rng rng(91);
  while (data.size() < 400) {
    std::vector<double> v(24, 0.0);
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = rng.uniform();
    data.vectors.push_back(v);
    data.labels.push_back(v[14] > v[19] ? SelectionLabel::SqlCorrect
                                        : SelectionLabel::E2eCorrect);
    data.instance_ids.push_back("x");
  }
  auto model = train_forest(data, {}, 17);
  auto ranking = permutation_importance(*model, data.vectors, data.labels, 3, 7);
  REQUIRE_FALSE(ranking.empty());
  bool top_is_confidence = ranking[0].feature == 14 || ranking[0].feature == 19;
  CHECK(top_is_confidence);
}
