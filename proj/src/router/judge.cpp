#include "syntqa/router/judge.hpp"

#include "syntqa/errors.hpp"
#include "syntqa/text.hpp"

namespace syntqa {

std::string_view judge_module_name(JudgeModule module) {
  switch (module) {
    case JudgeModule::Similarity: return "SIMILARITY";
    case JudgeModule::Relevance: return "RELEVANCE";
    case JudgeModule::Alignment: return "ALIGNMENT";
    case JudgeModule::Comparison: return "COMPARISON";
    case JudgeModule::Contradiction: return "CONTRADICTION";
  }
  return "SIMILARITY";
}

JudgeModule judge_module_from_name(std::string_view name) {
  std::string upper = to_lower(name);
  if (upper == "similarity") return JudgeModule::Similarity;
  if (upper == "relevance") return JudgeModule::Relevance;
  if (upper == "alignment") return JudgeModule::Alignment;
  if (upper == "comparison") return JudgeModule::Comparison;
  if (upper == "contradiction") return JudgeModule::Contradiction;
  throw Error(ErrorKind::InvalidRecord, "unknown judge module '" + std::string(name) + "'");
}

std::string_view verdict_name(Verdict verdict) {
  switch (verdict) {
    case Verdict::Yes: return "YES";
    case Verdict::No: return "NO";
    case Verdict::PickSql: return "PICK_SQL";
    case Verdict::PickE2e: return "PICK_E2E";
  }
  return "NO";
}

Verdict verdict_from_name(std::string_view name) {
  std::string lower = to_lower(name);
  if (lower == "yes") return Verdict::Yes;
  if (lower == "no") return Verdict::No;
  if (lower == "pick_sql") return Verdict::PickSql;
  if (lower == "pick_e2e") return Verdict::PickE2e;
  throw Error(ErrorKind::InvalidRecord, "unknown verdict '" + std::string(name) + "'");
}

std::pair<Verdict, bool> parse_backend_reply(JudgeModule module, std::string_view reply) {
  bool comparison = module == JudgeModule::Comparison;
  for (const auto& token : tokenize(reply)) {
    if (comparison) {
      if (token == "a") return {Verdict::PickSql, true};
      if (token == "b") return {Verdict::PickE2e, true};
    } else {
      if (token == "yes") return {Verdict::Yes, true};
      if (token == "no") return {Verdict::No, true};
    }
  }
  return {comparison ? Verdict::PickE2e : Verdict::No, false};
}

JudgeVerdict StubBackend::judge(const JudgeRequest& request) {
  call_log_.push_back(request.module);
  if (rule_) {
    if (auto verdict = rule_(request)) {
      return {request.module, *verdict, "stub-rule"};
    }
  }
  auto it = script_.find(request.module);
  if (it == script_.end()) {
    throw Error(ErrorKind::UnscriptedModule,
                "stub has no verdict for module " +
                    std::string(judge_module_name(request.module)));
  }
  return {request.module, it->second, "stub"};
}

JudgeVerdict RecordingBackend::judge(const JudgeRequest& request) {
  JudgeVerdict verdict = inner_.judge(request);
  log_.push_back(verdict);
  return verdict;
}

JudgeVerdict ReplayBackend::judge(const JudgeRequest& request) {
  if (next_ >= log_.size()) {
    throw Error(ErrorKind::UnscriptedModule, "replay log exhausted");
  }
  const JudgeVerdict& verdict = log_[next_];
  if (verdict.module != request.module) {
    throw Error(ErrorKind::UnscriptedModule,
                "replay expected module " + std::string(judge_module_name(verdict.module)) +
                    ", got " + std::string(judge_module_name(request.module)));
  }
  ++next_;
  return verdict;
}

}  // namespace syntqa
