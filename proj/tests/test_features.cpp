#include <doctest.h>

#include <cmath>
#include <set>

#include "syntqa/errors.hpp"
#include "syntqa/features.hpp"
#include "syntqa/rng.hpp"

using namespace syntqa;

namespace {

TableData demo_table() {
  return TableData::build(
      "games", {"player", "goals", "year"},
      {
          {CellValue::text("Alice"), CellValue::number(12), CellValue::number(1971)},
          {CellValue::text("Bob"), CellValue::number(8), CellValue::number(1984)},
          {CellValue::text("Cara"), CellValue::number(15), CellValue::number(1990)},
      });
}

QAInstance demo_instance() {
  QAInstance inst;
  inst.id = "q1";
  inst.question_tokens = {"how", "many", "players", "scored", "more", "than", "10", "goals"};
  inst.table_id = "games";
  inst.gold_answers = {"2"};
  return inst;
}

ModelPrediction sql_prediction(const std::string& id) {
  ModelPrediction pred;
  pred.instance_id = id;
  pred.source = PredictionSource::Text2Sql;
  pred.answers = {"2"};
  pred.seq_logprob = -0.5;
  pred.n_tokens = 5;
  pred.sql_text = "SELECT COUNT(*) FROM t WHERE goals_parsed > 10";
  pred.exec_ok = true;
  return pred;
}

ModelPrediction e2e_prediction(const std::string& id) {
  ModelPrediction pred;
  pred.instance_id = id;
  pred.source = PredictionSource::E2E;
  pred.answers = {"1971"};
  pred.seq_logprob = -1.0;
  pred.n_tokens = 2;
  return pred;
}

}  // namespace

TEST_CASE("question characteristics") {
  QAInstance inst = demo_instance();
  TableData table = demo_table();
  FeatureVector fv = extract_features(inst, table, sql_prediction("q1"), e2e_prediction("q1"));
  CHECK(kQuestionWords[fv.question_word] == "how");
  CHECK(fv.question_len == 8);
  CHECK(fv.n_numbers_in_q == 1);
  CHECK(fv.n_rows == 3);
  CHECK(fv.n_cols == 3);
  CHECK(fv.header_overlap == 1);  // only "goals" overlaps the header
  CHECK_FALSE(fv.truncated);
  CHECK(fv.sql_confidence == doctest::Approx(std::exp(-0.1)));
  CHECK(fv.n_preproc_cols == 1);
  CHECK(fv.exec_ok);
  CHECK(fv.n_sql_answers == 1);
  CHECK(fv.sql_answer_dtype == AnswerDtype::Num);
  CHECK(fv.n_e2e_answers == 1);
  CHECK(fv.e2e_answer_dtype == AnswerDtype::Num);
  CHECK_FALSE(fv.e2e_substr_of_sql);
  CHECK(fv.e2e_substr_of_input);  // 1971 appears in the linearized table
}

TEST_CASE("question word scanning rules") {
  CHECK(kQuestionWords[question_word_slot({"what", "year"})] == "what");
  CHECK(kQuestionWords[question_word_slot({"in", "which", "year"})] == "which");
  CHECK(kQuestionWords[question_word_slot({"name", "the", "team"})] == "name");
  CHECK(kQuestionWords[question_word_slot({"the", "name", "is"})] == "other");
  CHECK(kQuestionWords[question_word_slot({"tell", "me", "when"})] == "when");
  CHECK(kQuestionWords[question_word_slot({"a", "b", "c", "what"})] == "other");
  CHECK(kQuestionWords[question_word_slot({"How", "many?"})] == "how");
}

TEST_CASE("failed execution zeroes the sql answer block") {
  QAInstance inst = demo_instance();
  TableData table = demo_table();
  ModelPrediction sql = sql_prediction("q1");
  sql.exec_ok = false;
  sql.answers = {"stale"};  // ignored once execution failed
  FeatureVector fv = extract_features(inst, table, sql, e2e_prediction("q1"));
  CHECK_FALSE(fv.exec_ok);
  CHECK(fv.n_sql_answers == 0);
  CHECK(fv.sql_answer_dtype == AnswerDtype::Empty);
}

TEST_CASE("dtype detection") {
  CHECK(detect_answer_dtype({}) == AnswerDtype::Empty);
  CHECK(detect_answer_dtype({"1", "2,300"}) == AnswerDtype::Num);
  CHECK(detect_answer_dtype({"a", "b"}) == AnswerDtype::Str);
  CHECK(detect_answer_dtype({"1", "b"}) == AnswerDtype::Mixed);
}

TEST_CASE("mismatched prediction ids are rejected") {
  QAInstance inst = demo_instance();
  TableData table = demo_table();
  try {
    extract_features(inst, table, sql_prediction("other"), e2e_prediction("q1"));
    FAIL("expected MismatchedIds");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::MismatchedIds);
  }
}

TEST_CASE("encoding layout is frozen") {
  QAInstance inst = demo_instance();
  TableData table = demo_table();
  FeatureVector fv = extract_features(inst, table, sql_prediction("q1"), e2e_prediction("q1"));
  std::vector<double> v = encode(fv);
  REQUIRE(v.size() == kEncodedDim);
  // golden expected encoding, computed by hand from the definitions above
  std::vector<double> expected = {
      0, 0, 0, 0, 0, 1, 0, 0,          // question word one-hot: "how"
      8, 1, 3, 3, 1, 0,                // len, numbers, rows, cols, overlap, truncated
      std::exp(-0.1), 1, 1, 1, 1,      // sql conf, preproc, exec_ok, n answers, dtype NUM
      std::exp(-0.5), 1, 1,            // e2e conf, n answers, dtype NUM
      0, 1,                            // substr of sql, substr of input
  };
  REQUIRE(expected.size() == kEncodedDim);
  for (std::size_t i = 0; i < kEncodedDim; ++i) {
    CAPTURE(i);
    CHECK(v[i] == doctest::Approx(expected[i]).epsilon(1e-12));
  }
}

TEST_CASE("encode is injective across fields") {
  FeatureVector base;
  base.sql_confidence = 0.5;
  base.e2e_confidence = 0.5;
  std::vector<FeatureVector> variants;
  for (int i = 0; i < 8; ++i) {
    FeatureVector fv = base;
    fv.question_word = static_cast<std::size_t>(i);
    variants.push_back(fv);
  }
  FeatureVector fv = base;
  fv.question_len = 3;
  variants.push_back(fv);
  fv = base; fv.n_numbers_in_q = 2; variants.push_back(fv);
  fv = base; fv.n_rows = 9; variants.push_back(fv);
  fv = base; fv.n_cols = 9; variants.push_back(fv);
  fv = base; fv.header_overlap = 4; variants.push_back(fv);
  fv = base; fv.truncated = true; variants.push_back(fv);
  fv = base; fv.sql_confidence = 0.25; variants.push_back(fv);
  fv = base; fv.n_preproc_cols = 2; variants.push_back(fv);
  fv = base; fv.exec_ok = true; variants.push_back(fv);
  fv = base; fv.n_sql_answers = 5; variants.push_back(fv);
  fv = base; fv.sql_answer_dtype = AnswerDtype::Mixed; variants.push_back(fv);
  fv = base; fv.e2e_confidence = 0.75; variants.push_back(fv);
  fv = base; fv.n_e2e_answers = 2; variants.push_back(fv);
  fv = base; fv.e2e_answer_dtype = AnswerDtype::Str; variants.push_back(fv);
  fv = base; fv.e2e_substr_of_sql = true; variants.push_back(fv);
  fv = base; fv.e2e_substr_of_input = true; variants.push_back(fv);

  std::set<std::vector<double>> encodings;
  for (const auto& variant : variants) encodings.insert(encode(variant));
  CHECK(encodings.size() == variants.size());
}

TEST_CASE("features are invariant under row permutation") {
  QAInstance inst = demo_instance();
  TableData table = demo_table();
  ModelPrediction sql = sql_prediction("q1");
  ModelPrediction e2e = e2e_prediction("q1");
  std::vector<double> base = encode(extract_features(inst, table, sql, e2e));

  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    TableData shuffled = table;
    rng.shuffle(shuffled.rows);
    std::vector<double> permuted = encode(extract_features(inst, shuffled, sql, e2e));
    CHECK(permuted == base);
  }
}

TEST_CASE("header overlap is bounded") {
  QAInstance inst = demo_instance();
  TableData table = demo_table();
  FeatureVector fv = extract_features(inst, table, sql_prediction("q1"), e2e_prediction("q1"));
  std::set<std::string> header_tokens;
  for (const auto& h : table.header) header_tokens.insert(h);
  CHECK(fv.header_overlap <= fv.question_len);
  CHECK(fv.header_overlap <= static_cast<int>(header_tokens.size()));
}
