#include "syntqa/router/templates.hpp"

#include <fstream>
#include <sstream>

#include "syntqa/errors.hpp"
#include "syntqa/text.hpp"

namespace syntqa {

namespace {

constexpr std::string_view kSimilarity =
    "# similarity v1\n"
    "Question: {question}\n"
    "Answer A: {answer_a}\n"
    "Answer B: {answer_b}\n"
    "Do Answer A and Answer B refer to the same entity or value? Reply YES or NO.\n";

constexpr std::string_view kRelevance =
    "# relevance v1\n"
    "Question: {question}\n"
    "Answer: {answer_a}\n"
    "Is this answer a relevant response to the question? Reply YES or NO.\n";

constexpr std::string_view kAlignment =
    "# alignment v1\n"
    "Question: {question}\n"
    "Answer: {answer_a}\n"
    "Does the number of entities in the answer correspond to what the question asks for? "
    "Reply YES or NO.\n";

constexpr std::string_view kComparison =
    "# comparison v1\n"
    "Question: {question}\n"
    "Answer A: {answer_a}\n"
    "Answer B: {answer_b}\n"
    "Which answer is correct for the question? Reply A or B.\n";

constexpr std::string_view kContradiction =
    "# contradiction v1\n"
    "Table: {table}\n"
    "Question: {question}\n"
    "Claimed count: {answer_a}\n"
    "Does the table contain more matching entities than the claimed count? Reply YES or NO.\n";

const std::map<JudgeModule, std::string_view>& builtin_bodies() {
  static const std::map<JudgeModule, std::string_view> bodies = {
      {JudgeModule::Similarity, kSimilarity},
      {JudgeModule::Relevance, kRelevance},
      {JudgeModule::Alignment, kAlignment},
      {JudgeModule::Comparison, kComparison},
      {JudgeModule::Contradiction, kContradiction},
  };
  return bodies;
}

void replace_all(std::string& text, std::string_view needle, const std::string& value) {
  std::size_t pos = 0;
  while ((pos = text.find(needle, pos)) != std::string::npos) {
    text.replace(pos, needle.size(), value);
    pos += value.size();
  }
}

}  // namespace

PromptTemplates PromptTemplates::builtin() {
  PromptTemplates templates;
  for (const auto& [module, body] : builtin_bodies()) {
    templates.bodies_[module] = std::string(body);
  }
  return templates;
}

PromptTemplates PromptTemplates::load_dir(const std::filesystem::path& dir) {
  PromptTemplates templates;
  for (const auto& [module, unused] : builtin_bodies()) {
    std::filesystem::path file =
        dir / (to_lower(judge_module_name(module)) + ".txt");
    std::ifstream in(file);
    if (!in) {
      throw Error(ErrorKind::TemplateMissing, "no template file " + file.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    templates.bodies_[module] = buf.str();
  }
  return templates;
}

const std::string& PromptTemplates::raw(JudgeModule module) const {
  auto it = bodies_.find(module);
  if (it == bodies_.end()) {
    throw Error(ErrorKind::TemplateMissing,
                "no template for module " + std::string(judge_module_name(module)));
  }
  return it->second;
}

std::string PromptTemplates::render(JudgeModule module, const RenderContext& context) const {
  std::istringstream in(raw(module));
  std::string rendered;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') continue;  // header/comment lines
    if (!rendered.empty()) rendered += '\n';
    rendered += line;
  }
  replace_all(rendered, "{question}", context.question);
  replace_all(rendered, "{answer_a}", context.answer_a);
  replace_all(rendered, "{answer_b}", context.answer_b);
  replace_all(rendered, "{table}", context.table);
  return rendered;
}

}  // namespace syntqa
