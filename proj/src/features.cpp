#include "syntqa/features.hpp"

#include <algorithm>
#include <set>

#include "syntqa/errors.hpp"
#include "syntqa/metrics.hpp"
#include "syntqa/sql/parser.hpp"
#include "syntqa/text.hpp"

namespace syntqa {

std::string_view answer_dtype_name(AnswerDtype dtype) {
  switch (dtype) {
    case AnswerDtype::Empty: return "EMPTY";
    case AnswerDtype::Num: return "NUM";
    case AnswerDtype::Str: return "STR";
    case AnswerDtype::Mixed: return "MIXED";
  }
  return "EMPTY";
}

AnswerDtype detect_answer_dtype(const std::vector<std::string>& answers) {
  if (answers.empty()) return AnswerDtype::Empty;
  std::size_t numeric = 0;
  for (const auto& answer : answers) {
    if (parse_number(normalize_answer(answer))) ++numeric;
  }
  if (numeric == answers.size()) return AnswerDtype::Num;
  if (numeric == 0) return AnswerDtype::Str;
  return AnswerDtype::Mixed;
}

std::size_t question_word_slot(const std::vector<std::string>& question_tokens) {
  std::vector<std::string> tokens;
  for (const auto& raw : question_tokens) {
    std::string t = normalize_token(raw);
    if (!t.empty()) tokens.push_back(std::move(t));
  }
  for (std::size_t i = 0; i < tokens.size() && i < 3; ++i) {
    for (std::size_t w = 0; w + 2 < kQuestionWords.size(); ++w) {  // interrogatives only
      if (tokens[i] == kQuestionWords[w]) return w;
    }
  }
  if (!tokens.empty() && tokens[0] == "name") return 6;
  return 7;
}

const std::array<std::string, kEncodedDim>& feature_names() {
  static const std::array<std::string, kEncodedDim> names = {
      "qw_what",         "qw_which",         "qw_who",
      "qw_when",         "qw_where",         "qw_how",
      "qw_name",         "qw_other",         "question_len",
      "n_numbers_in_q",  "n_rows",           "n_cols",
      "header_overlap",  "truncated",        "sql_confidence",
      "n_preproc_cols",  "exec_ok",          "n_sql_answers",
      "sql_answer_dtype", "e2e_confidence",  "n_e2e_answers",
      "e2e_answer_dtype", "e2e_substr_of_sql", "e2e_substr_of_input",
  };
  return names;
}

std::vector<double> encode(const FeatureVector& fv) {
  std::vector<double> out(kEncodedDim, 0.0);
  out[fv.question_word] = 1.0;
  out[8] = fv.question_len;
  out[9] = fv.n_numbers_in_q;
  out[10] = fv.n_rows;
  out[11] = fv.n_cols;
  out[12] = fv.header_overlap;
  out[13] = fv.truncated ? 1.0 : 0.0;
  out[14] = fv.sql_confidence;
  out[15] = fv.n_preproc_cols;
  out[16] = fv.exec_ok ? 1.0 : 0.0;
  out[17] = fv.n_sql_answers;
  out[18] = static_cast<double>(fv.sql_answer_dtype);
  out[19] = fv.e2e_confidence;
  out[20] = fv.n_e2e_answers;
  out[21] = static_cast<double>(fv.e2e_answer_dtype);
  out[22] = fv.e2e_substr_of_sql ? 1.0 : 0.0;
  out[23] = fv.e2e_substr_of_input ? 1.0 : 0.0;
  return out;
}

namespace {

std::string join_answers(const std::vector<std::string>& answers) {
  std::string out;
  for (std::size_t i = 0; i < answers.size(); ++i) {
    if (i > 0) out += ", ";
    out += answers[i];
  }
  return out;
}

}  // namespace

FeatureVector extract_features(const QAInstance& instance, const TableData& table,
                               const ModelPrediction& sql_pred, const ModelPrediction& e2e_pred,
                               std::size_t budget) {
  if (sql_pred.instance_id != instance.id || e2e_pred.instance_id != instance.id) {
    throw Error(ErrorKind::MismatchedIds,
                "predictions do not both refer to instance '" + instance.id + "'");
  }

  FeatureVector fv;
  fv.question_word = question_word_slot(instance.question_tokens);

  std::vector<std::string> tokens;
  for (const auto& raw : instance.question_tokens) {
    std::string t = normalize_token(raw);
    if (!t.empty()) tokens.push_back(std::move(t));
  }
  fv.question_len = static_cast<int>(tokens.size());
  fv.n_numbers_in_q = static_cast<int>(
      std::count_if(tokens.begin(), tokens.end(),
                    [](const std::string& t) { return is_numeric_token(t); }));

  fv.n_rows = static_cast<int>(table.n_rows());
  fv.n_cols = static_cast<int>(table.n_cols());

  std::set<std::string> header_tokens;
  for (const auto& name : table.header) {
    for (const auto& t : tokenize(name)) header_tokens.insert(t);
  }
  std::set<std::string> question_set(tokens.begin(), tokens.end());
  fv.header_overlap = static_cast<int>(std::count_if(
      question_set.begin(), question_set.end(),
      [&](const std::string& t) { return header_tokens.count(t) > 0; }));

  Linearization lin = linearize(table, budget);
  fv.truncated = lin.truncated;

  fv.sql_confidence = sql_pred.confidence();
  fv.n_preproc_cols =
      sql_pred.sql_text ? sql::count_preprocessed_columns(*sql_pred.sql_text) : 0;
  fv.exec_ok = sql_pred.exec_ok.value_or(false);
  const std::vector<std::string> no_answers;
  const std::vector<std::string>& sql_answers = fv.exec_ok ? sql_pred.answers : no_answers;
  fv.n_sql_answers = static_cast<int>(sql_answers.size());
  fv.sql_answer_dtype = detect_answer_dtype(sql_answers);

  fv.e2e_confidence = e2e_pred.confidence();
  fv.n_e2e_answers = static_cast<int>(e2e_pred.answers.size());
  fv.e2e_answer_dtype = detect_answer_dtype(e2e_pred.answers);

  std::string e2e_joined = normalize_loose(join_answers(e2e_pred.answers));
  std::string sql_joined = normalize_loose(join_answers(sql_answers));
  fv.e2e_substr_of_sql =
      !e2e_joined.empty() && sql_joined.find(e2e_joined) != std::string::npos;
  std::string input = normalize_loose(instance.question_text() + " " + lin.text);
  fv.e2e_substr_of_input =
      !e2e_joined.empty() && input.find(e2e_joined) != std::string::npos;

  return fv;
}

}  // namespace syntqa
