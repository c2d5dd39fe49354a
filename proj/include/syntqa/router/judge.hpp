#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace syntqa {

enum class JudgeModule { Similarity, Relevance, Alignment, Comparison, Contradiction };

std::string_view judge_module_name(JudgeModule module);
JudgeModule judge_module_from_name(std::string_view name);

enum class Verdict { Yes, No, PickSql, PickE2e };

std::string_view verdict_name(Verdict verdict);
Verdict verdict_from_name(std::string_view name);

struct JudgeRequest {
  JudgeModule module = JudgeModule::Similarity;
  std::string question;
  std::string prompt;  ///< rendered from the module's template
  std::string sql_answer;
  std::string e2e_answer;
  std::string truncated_table_text;  ///< CONTRADICTION only
};

struct JudgeVerdict {
  JudgeModule module = JudgeModule::Similarity;
  Verdict verdict = Verdict::No;
  std::string raw_response;
};

/// Scans the reply for the first YES/NO (boolean modules) or A/B
/// (COMPARISON) token; unparseable output falls back to NO / PICK_E2E and
/// reports `parsed=false`.
std::pair<Verdict, bool> parse_backend_reply(JudgeModule module, std::string_view reply);

class JudgeBackend {
 public:
  virtual ~JudgeBackend() = default;
  virtual JudgeVerdict judge(const JudgeRequest& request) = 0;
};

/// Deterministic scripted backend; records call order for assertions.
/// Verdicts come from per-module fixed entries or a rule callback; modules
/// with neither raise UnscriptedModule.
class StubBackend : public JudgeBackend {
 public:
  using Rule = std::function<std::optional<Verdict>(const JudgeRequest&)>;

  StubBackend() = default;
  explicit StubBackend(std::map<JudgeModule, Verdict> script) : script_(std::move(script)) {}

  void set_verdict(JudgeModule module, Verdict verdict) { script_[module] = verdict; }
  void set_rule(Rule rule) { rule_ = std::move(rule); }

  JudgeVerdict judge(const JudgeRequest& request) override;

  const std::vector<JudgeModule>& call_log() const { return call_log_; }
  void clear_log() { call_log_.clear(); }

 private:
  std::map<JudgeModule, Verdict> script_;
  Rule rule_;
  std::vector<JudgeModule> call_log_;
};

/// Wraps a backend and records (module, verdict) pairs for later replay.
class RecordingBackend : public JudgeBackend {
 public:
  explicit RecordingBackend(JudgeBackend& inner) : inner_(inner) {}

  JudgeVerdict judge(const JudgeRequest& request) override;

  const std::vector<JudgeVerdict>& log() const { return log_; }

 private:
  JudgeBackend& inner_;
  std::vector<JudgeVerdict> log_;
};

/// Replays a recorded verdict log in order; mismatched module or an
/// exhausted log raises UnscriptedModule.
class ReplayBackend : public JudgeBackend {
 public:
  explicit ReplayBackend(std::vector<JudgeVerdict> log) : log_(std::move(log)) {}

  JudgeVerdict judge(const JudgeRequest& request) override;

 private:
  std::vector<JudgeVerdict> log_;
  std::size_t next_ = 0;
};

}  // namespace syntqa
