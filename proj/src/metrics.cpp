#include "syntqa/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "syntqa/text.hpp"

namespace syntqa {

std::string normalize_answer(std::string_view answer) {
  std::string s = trim(answer);
  s = strip_surrounding_quotes(s);
  s = normalize_loose(s);
  if (auto num = parse_number(s)) return format_number(*num);
  return s;
}

namespace {

struct SplitAnswers {
  std::vector<double> numbers;        // sorted
  std::vector<std::string> strings;   // sorted normalized forms
};

SplitAnswers split_answers(const std::vector<std::string>& answers) {
  SplitAnswers out;
  for (const auto& answer : answers) {
    std::string norm = normalize_answer(answer);
    if (auto num = parse_number(norm)) {
      out.numbers.push_back(*num);
    } else {
      out.strings.push_back(std::move(norm));
    }
  }
  std::sort(out.numbers.begin(), out.numbers.end());
  std::sort(out.strings.begin(), out.strings.end());
  return out;
}

bool multiset_equal(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  SplitAnswers sa = split_answers(a);
  SplitAnswers sb = split_answers(b);
  if (sa.strings != sb.strings) return false;
  if (sa.numbers.size() != sb.numbers.size()) return false;
  for (std::size_t i = 0; i < sa.numbers.size(); ++i) {
    if (std::fabs(sa.numbers[i] - sb.numbers[i]) > kNumericMatchTolerance) return false;
  }
  return true;
}

}  // namespace

bool exact_match(const std::vector<std::string>& predicted,
                 const std::vector<std::string>& gold) {
  if (gold.empty()) return false;
  return multiset_equal(predicted, gold);
}

bool answers_agree(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  return multiset_equal(a, b);
}

std::string answer_list_key(const std::vector<std::string>& answers) {
  std::vector<std::string> keys;
  keys.reserve(answers.size());
  for (const auto& answer : answers) keys.push_back(normalize_answer(answer));
  std::sort(keys.begin(), keys.end());
  std::string out;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (i > 0) out.push_back('\x1f');
    out += keys[i];
  }
  return out;
}

}  // namespace syntqa
