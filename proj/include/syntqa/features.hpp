#pragma once

#include <array>
#include <string>
#include <vector>

#include "syntqa/instance.hpp"
#include "syntqa/table.hpp"

namespace syntqa {

enum class AnswerDtype { Empty = 0, Num = 1, Str = 2, Mixed = 3 };

std::string_view answer_dtype_name(AnswerDtype dtype);
AnswerDtype detect_answer_dtype(const std::vector<std::string>& answers);

inline constexpr std::array<std::string_view, 8> kQuestionWords = {
    "what", "which", "who", "when", "where", "how", "name", "other"};

/// Interrogative bucket: first hit among the first three tokens, "name" when
/// the question opens with it, else "other".
std::size_t question_word_slot(const std::vector<std::string>& question_tokens);

struct FeatureVector {
  std::size_t question_word = 7;  ///< index into kQuestionWords
  int question_len = 0;
  int n_numbers_in_q = 0;
  int n_rows = 0;
  int n_cols = 0;
  int header_overlap = 0;
  bool truncated = false;
  double sql_confidence = 1.0;
  int n_preproc_cols = 0;
  bool exec_ok = false;
  int n_sql_answers = 0;
  AnswerDtype sql_answer_dtype = AnswerDtype::Empty;
  double e2e_confidence = 1.0;
  int n_e2e_answers = 0;
  AnswerDtype e2e_answer_dtype = AnswerDtype::Empty;
  bool e2e_substr_of_sql = false;
  bool e2e_substr_of_input = false;
};

/// Encoded layout: 8 one-hot question-word slots, then 14 numeric/boolean
/// slots interleaved with the 2 categorical answer-dtype codes, 24 total.
inline constexpr std::size_t kEncodedDim = 24;

const std::array<std::string, kEncodedDim>& feature_names();

std::vector<double> encode(const FeatureVector& fv);

FeatureVector extract_features(const QAInstance& instance, const TableData& table,
                               const ModelPrediction& sql_pred, const ModelPrediction& e2e_pred,
                               std::size_t budget = kDefaultLinearizeBudget);

}  // namespace syntqa
