#include "syntqa/instance.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include <json.hpp>

#include "syntqa/errors.hpp"
#include "syntqa/text.hpp"

namespace syntqa {

using json = nlohmann::ordered_json;

const std::vector<std::string>& perturbation_tags() {
  static const std::vector<std::string> tags = {
      "synonym_replacement",  "abbreviation_replacement", "column_extension",
      "column_adding",        "word_level_paraphrase",    "sentence_level_paraphrase",
      "mix",
  };
  return tags;
}

std::string QAInstance::question_text() const {
  std::string out;
  for (std::size_t i = 0; i < question_tokens.size(); ++i) {
    if (i > 0) out += ' ';
    out += question_tokens[i];
  }
  return out;
}

std::string_view source_name(PredictionSource source) {
  return source == PredictionSource::Text2Sql ? "TEXT2SQL" : "E2E";
}

PredictionSource source_from_name(std::string_view name) {
  if (name == "TEXT2SQL") return PredictionSource::Text2Sql;
  if (name == "E2E") return PredictionSource::E2E;
  throw Error(ErrorKind::InvalidRecord, "unknown prediction source '" + std::string(name) + "'");
}

double ModelPrediction::confidence() const {
  return std::exp(seq_logprob / static_cast<double>(n_tokens));
}

namespace {

json parse_line(const std::string& line, const std::filesystem::path& path, std::size_t lineno) {
  json record = json::parse(line, nullptr, false);
  if (record.is_discarded() || !record.is_object()) {
    throw Error(ErrorKind::InvalidRecord,
                path.string() + ":" + std::to_string(lineno) + ": not a record");
  }
  return record;
}

std::vector<std::string> string_list(const json& value, const std::string& field) {
  if (!value.is_array()) {
    throw Error(ErrorKind::InvalidRecord, "field '" + field + "' must be a list of strings");
  }
  std::vector<std::string> out;
  out.reserve(value.size());
  for (const auto& item : value) {
    if (!item.is_string()) {
      throw Error(ErrorKind::InvalidRecord, "field '" + field + "' must be a list of strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

const json& require(const json& record, const std::string& field,
                    const std::filesystem::path& path, std::size_t lineno) {
  auto it = record.find(field);
  if (it == record.end() || it->is_null()) {
    throw Error(ErrorKind::MissingField, path.string() + ":" + std::to_string(lineno) +
                                             ": missing field '" + field + "'");
  }
  return *it;
}

template <typename Fn>
void for_each_line(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    fn(line, lineno);
  }
}

}  // namespace

std::vector<QAInstance> load_instances(const std::filesystem::path& path,
                                       const std::map<std::string, TableData>& tables) {
  std::vector<QAInstance> instances;
  std::set<std::string> ids;
  for_each_line(path, [&](const std::string& line, std::size_t lineno) {
    json record = parse_line(line, path, lineno);
    QAInstance inst;
    inst.id = require(record, "id", path, lineno).get<std::string>();
    inst.question_tokens = string_list(require(record, "question_tokens", path, lineno),
                                       "question_tokens");
    inst.table_id = require(record, "table_id", path, lineno).get<std::string>();
    inst.gold_answers = string_list(require(record, "gold_answers", path, lineno),
                                    "gold_answers");
    if (inst.question_tokens.empty()) {
      throw Error(ErrorKind::MissingField, "instance '" + inst.id + "' has no question tokens");
    }
    if (inst.gold_answers.empty()) {
      throw Error(ErrorKind::MissingField, "instance '" + inst.id + "' has no gold answers");
    }
    if (auto it = record.find("gold_sql"); it != record.end() && !it->is_null()) {
      inst.gold_sql = it->get<std::string>();
    }
    if (auto it = record.find("perturbation_tag"); it != record.end() && !it->is_null()) {
      std::string tag = it->get<std::string>();
      const auto& valid = perturbation_tags();
      if (std::find(valid.begin(), valid.end(), tag) == valid.end()) {
        throw Error(ErrorKind::InvalidRecord,
                    "instance '" + inst.id + "' has unknown perturbation tag '" + tag + "'");
      }
      inst.perturbation_tag = tag;
    }
    if (auto it = record.find("split"); it != record.end() && !it->is_null()) {
      inst.split = it->get<std::string>();
    }
    if (!tables.count(inst.table_id)) {
      throw Error(ErrorKind::UnknownTable,
                  "instance '" + inst.id + "' references unknown table '" + inst.table_id + "'");
    }
    if (!ids.insert(inst.id).second) {
      throw Error(ErrorKind::DuplicateId, "duplicate instance id '" + inst.id + "'");
    }
    instances.push_back(std::move(inst));
  });
  return instances;
}

void save_instances(const std::vector<QAInstance>& instances,
                    const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  for (const auto& inst : instances) {
    json record;
    record["id"] = inst.id;
    record["question_tokens"] = inst.question_tokens;
    record["table_id"] = inst.table_id;
    record["gold_answers"] = inst.gold_answers;
    if (inst.gold_sql) record["gold_sql"] = *inst.gold_sql;
    if (inst.perturbation_tag) record["perturbation_tag"] = *inst.perturbation_tag;
    record["split"] = inst.split;
    out << record.dump() << '\n';
  }
}

std::vector<ModelPrediction> load_predictions(const std::filesystem::path& path) {
  std::vector<ModelPrediction> predictions;
  std::set<std::string> ids;
  for_each_line(path, [&](const std::string& line, std::size_t lineno) {
    json record = parse_line(line, path, lineno);
    ModelPrediction pred;
    pred.instance_id = require(record, "instance_id", path, lineno).get<std::string>();
    pred.source = source_from_name(require(record, "source", path, lineno).get<std::string>());
    pred.answers = string_list(require(record, "answers", path, lineno), "answers");
    pred.seq_logprob = require(record, "seq_logprob", path, lineno).get<double>();
    pred.n_tokens = require(record, "n_tokens", path, lineno).get<int>();
    if (pred.n_tokens < 1) {
      throw Error(ErrorKind::InvalidRecord,
                  "prediction for '" + pred.instance_id + "' has n_tokens < 1");
    }
    if (pred.seq_logprob > 0.0) {
      throw Error(ErrorKind::InvalidRecord,
                  "prediction for '" + pred.instance_id + "' has positive seq_logprob");
    }
    if (auto it = record.find("sql_text"); it != record.end() && !it->is_null()) {
      pred.sql_text = it->get<std::string>();
    }
    if (pred.sql_text.has_value() != (pred.source == PredictionSource::Text2Sql)) {
      throw Error(ErrorKind::InvalidRecord,
                  "prediction for '" + pred.instance_id +
                      "': sql_text must be present exactly for TEXT2SQL predictions");
    }
    if (auto it = record.find("exec_ok"); it != record.end() && !it->is_null()) {
      pred.exec_ok = it->get<bool>();
    }
    if (auto it = record.find("candidates"); it != record.end() && !it->is_null()) {
      std::vector<std::vector<std::string>> lists;
      for (const auto& cand : *it) lists.push_back(string_list(cand, "candidates"));
      pred.candidates = std::move(lists);
    }
    if (auto it = record.find("candidate_confidences"); it != record.end() && !it->is_null()) {
      pred.candidate_confidences = it->get<std::vector<double>>();
      if (!pred.candidates || pred.candidates->size() != pred.candidate_confidences->size()) {
        throw Error(ErrorKind::InvalidRecord,
                    "prediction for '" + pred.instance_id +
                        "': candidate_confidences must pair with candidates");
      }
    }
    if (!ids.insert(pred.instance_id).second) {
      throw Error(ErrorKind::DuplicateId,
                  "duplicate prediction for instance '" + pred.instance_id + "'");
    }
    predictions.push_back(std::move(pred));
  });
  return predictions;
}

void save_predictions(const std::vector<ModelPrediction>& predictions,
                      const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
  for (const auto& pred : predictions) {
    json record;
    record["instance_id"] = pred.instance_id;
    record["source"] = std::string(source_name(pred.source));
    record["answers"] = pred.answers;
    record["seq_logprob"] = pred.seq_logprob;
    record["n_tokens"] = pred.n_tokens;
    if (pred.sql_text) record["sql_text"] = *pred.sql_text;
    if (pred.exec_ok) record["exec_ok"] = *pred.exec_ok;
    if (pred.candidates) record["candidates"] = *pred.candidates;
    if (pred.candidate_confidences) record["candidate_confidences"] = *pred.candidate_confidences;
    out << record.dump() << '\n';
  }
}

std::map<std::string, const ModelPrediction*> index_predictions(
    const std::vector<ModelPrediction>& predictions) {
  std::map<std::string, const ModelPrediction*> index;
  for (const auto& pred : predictions) {
    if (!index.emplace(pred.instance_id, &pred).second) {
      throw Error(ErrorKind::DuplicateId,
                  "duplicate prediction for instance '" + pred.instance_id + "'");
    }
  }
  return index;
}

}  // namespace syntqa
