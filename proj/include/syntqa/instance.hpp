#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "syntqa/table.hpp"

namespace syntqa {

/// Tags accepted in QAInstance::perturbation_tag.
const std::vector<std::string>& perturbation_tags();

struct QAInstance {
  std::string id;
  std::vector<std::string> question_tokens;
  std::string table_id;
  std::vector<std::string> gold_answers;
  std::optional<std::string> gold_sql;
  std::optional<std::string> perturbation_tag;
  std::string split;

  std::string question_text() const;
};

enum class PredictionSource { Text2Sql, E2E };

std::string_view source_name(PredictionSource source);
PredictionSource source_from_name(std::string_view name);

struct ModelPrediction {
  std::string instance_id;
  PredictionSource source = PredictionSource::Text2Sql;
  std::vector<std::string> answers;
  double seq_logprob = 0.0;
  int n_tokens = 1;
  std::optional<std::string> sql_text;
  std::optional<bool> exec_ok;
  std::optional<std::vector<std::vector<std::string>>> candidates;
  std::optional<std::vector<double>> candidate_confidences;

  /// Length-normalized generation confidence, exp(logprob / tokens) in (0, 1].
  double confidence() const;
};

/// Line-delimited records with the field names above; rejects duplicate ids,
/// missing required fields, and unknown table ids.
std::vector<QAInstance> load_instances(const std::filesystem::path& path,
                                       const std::map<std::string, TableData>& tables);

void save_instances(const std::vector<QAInstance>& instances,
                    const std::filesystem::path& path);

std::vector<ModelPrediction> load_predictions(const std::filesystem::path& path);
void save_predictions(const std::vector<ModelPrediction>& predictions,
                      const std::filesystem::path& path);

/// Index by instance id; duplicate ids rejected.
std::map<std::string, const ModelPrediction*> index_predictions(
    const std::vector<ModelPrediction>& predictions);

}  // namespace syntqa
