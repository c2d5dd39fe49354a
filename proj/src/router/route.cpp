#include "syntqa/router/route.hpp"

#include <cmath>

#include "syntqa/errors.hpp"
#include "syntqa/metrics.hpp"
#include "syntqa/text.hpp"

namespace syntqa {

bool is_counting_question(const std::vector<std::string>& question_tokens) {
  for (std::size_t i = 0; i + 1 < question_tokens.size(); ++i) {
    if (normalize_token(question_tokens[i]) == "how" &&
        normalize_token(question_tokens[i + 1]) == "many") {
      return true;
    }
  }
  return false;
}

bool is_small_integer_answer(const std::vector<std::string>& answers) {
  if (answers.size() != 1) return false;
  auto num = parse_number(normalize_answer(answers[0]));
  if (!num) return false;
  return *num >= 0.0 && *num <= 20.0 && *num == std::floor(*num);
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

SelectorDecision pick(const QAInstance& instance, const ModelPrediction& pred,
                      std::string tag) {
  SelectorDecision decision;
  decision.instance_id = instance.id;
  decision.chosen_source = pred.source;
  decision.answers = pred.answers;
  decision.score = pred.source == PredictionSource::Text2Sql ? 1.0 : 0.0;
  decision.rationale_tag = std::move(tag);
  return decision;
}

}  // namespace

SelectorDecision route(const QAInstance& instance, const TableData& table,
                       const ModelPrediction& sql_pred, const ModelPrediction& e2e_pred,
                       JudgeBackend& backend, const PromptTemplates& templates,
                       std::size_t budget) {
  // 1. agreement needs no judgment
  if (answers_agree(sql_pred.answers, e2e_pred.answers)) {
    return pick(instance, sql_pred, "agreement");
  }
  // 2. a failed or empty execution leaves only the E2E side
  if (!sql_pred.exec_ok.value_or(false) || sql_pred.answers.empty()) {
    return pick(instance, e2e_pred, "exec_failed");
  }

  RenderContext context;
  context.question = instance.question_text();
  context.answer_a = join_answers(sql_pred.answers);
  context.answer_b = join_answers(e2e_pred.answers);

  auto ask = [&](JudgeModule module) {
    JudgeRequest request;
    request.module = module;
    request.question = context.question;
    request.sql_answer = context.answer_a;
    request.e2e_answer = context.answer_b;
    if (module == JudgeModule::Contradiction) {
      request.truncated_table_text = linearize(table, budget).text;
      context.table = request.truncated_table_text;
    } else {
      context.table.clear();
    }
    request.prompt = templates.render(module, context);
    return backend.judge(request).verdict;
  };

  // 3. equivalent entities: trust the symbolic answer
  if (ask(JudgeModule::Similarity) == Verdict::Yes) {
    return pick(instance, sql_pred, "similarity");
  }
  // 4. irrelevant SQL answer
  if (ask(JudgeModule::Relevance) == Verdict::No) {
    return pick(instance, e2e_pred, "relevance");
  }
  // 5. wrong entity count in the SQL answer
  if (ask(JudgeModule::Alignment) == Verdict::No) {
    return pick(instance, e2e_pred, "alignment");
  }
  // 6. counting questions with small-integer candidates: check the table
  if (is_counting_question(instance.question_tokens) &&
      is_small_integer_answer(sql_pred.answers) &&
      is_small_integer_answer(e2e_pred.answers)) {
    if (ask(JudgeModule::Contradiction) == Verdict::Yes) {
      return pick(instance, e2e_pred, "contradiction");
    }
  }
  // 7. head-to-head comparison decides
  Verdict verdict = ask(JudgeModule::Comparison);
  if (verdict == Verdict::PickSql) {
    return pick(instance, sql_pred, "comparison");
  }
  return pick(instance, e2e_pred, "comparison");
}

SelectorDecision route_with_fallback(const QAInstance& instance, const TableData& table,
                                     const ModelPrediction& sql_pred,
                                     const ModelPrediction& e2e_pred, JudgeBackend& backend,
                                     const PromptTemplates& templates, std::size_t budget) {
  try {
    return route(instance, table, sql_pred, e2e_pred, backend, templates, budget);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::BackendUnavailable && e.kind() != ErrorKind::Timeout) throw;
    SelectorDecision decision = select_by_confidence(sql_pred, e2e_pred);
    decision.instance_id = instance.id;
    decision.rationale_tag = "confidence_fallback";
    return decision;
  }
}

}  // namespace syntqa
