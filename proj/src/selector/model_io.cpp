#include "syntqa/selector/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "syntqa/errors.hpp"

namespace syntqa {

using json = nlohmann::ordered_json;

namespace {

json standardizer_to_json(const Standardizer& s) {
  return json{{"mean", s.mean}, {"scale", s.scale}};
}

Standardizer standardizer_from_json(const json& j) {
  Standardizer s;
  s.mean = j.at("mean").get<std::vector<double>>();
  s.scale = j.at("scale").get<std::vector<double>>();
  return s;
}

json forest_to_json(const ForestModel& model) {
  json trees = json::array();
  for (const auto& tree : model.trees()) {
    json nodes = json::array();
    for (const auto& node : tree.nodes) {
      nodes.push_back(json::array(
          {node.feature, node.threshold, node.left, node.right, node.n_sql, node.n_e2e}));
    }
    trees.push_back(std::move(nodes));
  }
  const auto& hp = model.hyperparams();
  return json{
      {"hyperparams",
       {{"n_trees", hp.n_trees}, {"max_depth", hp.max_depth}, {"min_leaf", hp.min_leaf}}},
      {"seed", model.seed()},
      {"dim", model.dim()},
      {"trees", std::move(trees)},
  };
}

std::unique_ptr<SelectorModel> forest_from_json(const json& j) {
  ForestHyperparams hp;
  hp.n_trees = j.at("hyperparams").at("n_trees").get<int>();
  hp.max_depth = j.at("hyperparams").at("max_depth").get<int>();
  hp.min_leaf = j.at("hyperparams").at("min_leaf").get<int>();
  std::vector<DecisionTree> trees;
  for (const auto& tj : j.at("trees")) {
    DecisionTree tree;
    for (const auto& nj : tj) {
      TreeNode node;
      node.feature = nj.at(0).get<int>();
      node.threshold = nj.at(1).get<double>();
      node.left = nj.at(2).get<int>();
      node.right = nj.at(3).get<int>();
      node.n_sql = nj.at(4).get<std::int64_t>();
      node.n_e2e = nj.at(5).get<std::int64_t>();
      tree.nodes.push_back(node);
    }
    trees.push_back(std::move(tree));
  }
  return std::make_unique<ForestModel>(std::move(trees), hp, j.at("seed").get<std::uint64_t>(),
                                       j.at("dim").get<std::size_t>());
}

json logistic_to_json(const LogisticModel& model) {
  const auto& hp = model.hyperparams();
  return json{
      {"hyperparams",
       {{"learning_rate", hp.learning_rate},
        {"max_iters", hp.max_iters},
        {"tolerance", hp.tolerance},
        {"l2", hp.l2}}},
      {"standardizer", standardizer_to_json(model.standardizer())},
      {"weights", model.weights()},
      {"bias", model.bias()},
  };
}

std::unique_ptr<SelectorModel> logistic_from_json(const json& j) {
  LogisticHyperparams hp;
  hp.learning_rate = j.at("hyperparams").at("learning_rate").get<double>();
  hp.max_iters = j.at("hyperparams").at("max_iters").get<int>();
  hp.tolerance = j.at("hyperparams").at("tolerance").get<double>();
  hp.l2 = j.at("hyperparams").at("l2").get<double>();
  return std::make_unique<LogisticModel>(standardizer_from_json(j.at("standardizer")),
                                         j.at("weights").get<std::vector<double>>(),
                                         j.at("bias").get<double>(), hp);
}

json knn_to_json(const KnnModel& model) {
  json labels = json::array();
  for (auto label : model.labels()) {
    labels.push_back(label == SelectionLabel::SqlCorrect ? 0 : 1);
  }
  return json{
      {"hyperparams", {{"k", model.hyperparams().k}}},
      {"standardizer", standardizer_to_json(model.standardizer())},
      {"vectors", model.vectors()},
      {"labels", std::move(labels)},
  };
}

std::unique_ptr<SelectorModel> knn_from_json(const json& j) {
  KnnHyperparams hp;
  hp.k = j.at("hyperparams").at("k").get<int>();
  std::vector<SelectionLabel> labels;
  for (const auto& l : j.at("labels")) {
    labels.push_back(l.get<int>() == 0 ? SelectionLabel::SqlCorrect
                                       : SelectionLabel::E2eCorrect);
  }
  return std::make_unique<KnnModel>(standardizer_from_json(j.at("standardizer")),
                                    j.at("vectors").get<std::vector<std::vector<double>>>(),
                                    std::move(labels), hp);
}

}  // namespace

std::string serialize_model(const SelectorModel& model) {
  json j;
  j["format"] = "syntqa-model";
  j["version"] = kModelFormatVersion;
  j["kind"] = std::string(model.kind());
  if (model.kind() == "rf") {
    j.update(forest_to_json(static_cast<const ForestModel&>(model)));
  } else if (model.kind() == "lr") {
    j.update(logistic_to_json(static_cast<const LogisticModel&>(model)));
  } else if (model.kind() == "knn") {
    j.update(knn_to_json(static_cast<const KnnModel&>(model)));
  } else {
    throw Error(ErrorKind::InvalidSpec, "unknown model kind '" + std::string(model.kind()) + "'");
  }
  return j.dump(2) + "\n";
}

void save_model(const SelectorModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write model file " + path.string());
  out << serialize_model(model);
}

std::unique_ptr<SelectorModel> deserialize_model(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw Error(ErrorKind::VersionMismatch, "not a model file");
  }
  if (j.value("format", "") != "syntqa-model") {
    throw Error(ErrorKind::VersionMismatch, "unrecognized model format tag");
  }
  if (j.value("version", -1) != kModelFormatVersion) {
    throw Error(ErrorKind::VersionMismatch,
                "unsupported model version " + std::to_string(j.value("version", -1)));
  }
  std::string kind = j.value("kind", "");
  if (kind == "rf") return forest_from_json(j);
  if (kind == "lr") return logistic_from_json(j);
  if (kind == "knn") return knn_from_json(j);
  throw Error(ErrorKind::VersionMismatch, "unknown model kind '" + kind + "'");
}

std::unique_ptr<SelectorModel> load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open model file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return deserialize_model(buf.str());
}

}  // namespace syntqa
