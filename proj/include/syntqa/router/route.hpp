#pragma once

#include "syntqa/ensemble.hpp"
#include "syntqa/router/judge.hpp"
#include "syntqa/router/templates.hpp"

namespace syntqa {

/// Heuristic routing over five judgment modules. Order: agreement, SQL
/// execution failure, SIMILARITY, RELEVANCE, ALIGNMENT, CONTRADICTION (for
/// counting questions with small-integer candidates), COMPARISON. Cheap
/// checks run before any backend call; agreement and execution failure never
/// touch the backend.
SelectorDecision route(const QAInstance& instance, const TableData& table,
                       const ModelPrediction& sql_pred, const ModelPrediction& e2e_pred,
                       JudgeBackend& backend,
                       const PromptTemplates& templates = PromptTemplates::builtin(),
                       std::size_t budget = kDefaultLinearizeBudget);

/// route(), falling back to confidence selection (tag
/// "confidence_fallback") when the backend is unavailable or times out.
SelectorDecision route_with_fallback(const QAInstance& instance, const TableData& table,
                                     const ModelPrediction& sql_pred,
                                     const ModelPrediction& e2e_pred, JudgeBackend& backend,
                                     const PromptTemplates& templates = PromptTemplates::builtin(),
                                     std::size_t budget = kDefaultLinearizeBudget);

/// True when the question contains the "how many" bigram.
bool is_counting_question(const std::vector<std::string>& question_tokens);

/// True when the answer list is a single integer in [0, 20].
bool is_small_integer_answer(const std::vector<std::string>& answers);

}  // namespace syntqa
