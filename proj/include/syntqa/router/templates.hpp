#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "syntqa/router/judge.hpp"

namespace syntqa {

struct RenderContext {
  std::string question;
  std::string answer_a;  ///< Text-to-SQL answer
  std::string answer_b;  ///< E2E answer
  std::string table;     ///< truncated linearization, when the module uses it
};

/// Prompt templates with {question}, {answer_a}, {answer_b}, {table}
/// placeholders. Template files start with a "# name vN" header line;
/// header comment lines are stripped from the rendered prompt.
class PromptTemplates {
 public:
  /// Compiled-in defaults matching the files shipped under templates/.
  static PromptTemplates builtin();

  /// Loads <module>.txt (lowercase) for all five modules from a directory;
  /// missing files raise TemplateMissing.
  static PromptTemplates load_dir(const std::filesystem::path& dir);

  std::string render(JudgeModule module, const RenderContext& context) const;

  const std::string& raw(JudgeModule module) const;

 private:
  std::map<JudgeModule, std::string> bodies_;
};

}  // namespace syntqa
